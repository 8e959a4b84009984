#include "pf/features.hpp"

#include "pf/error.hpp"

namespace pf {

std::string_view segment_name(Segment s) noexcept {
    switch (s) {
        case Segment::Tweets: return "tweets";
        case Segment::Description: return "description";
        case Segment::Empath: return "empath";
        case Segment::Readability: return "readability";
        case Segment::Counts: return "counts";
        case Segment::Url: return "url";
        case Segment::Hashtag: return "hashtag";
        case Segment::Mention: return "mention";
    }
    return "?";
}

bool AblationConfig::enabled(Segment s) const noexcept {
    switch (s) {
        case Segment::Tweets: return tweets_encoding;
        case Segment::Description: return description_encoding;
        case Segment::Empath: return empath;
        case Segment::Readability: return readability;
        case Segment::Counts: return counts;
        case Segment::Url: return url_emb;
        case Segment::Hashtag: return hashtag_emb;
        case Segment::Mention: return mention_emb;
    }
    return false;
}

const std::vector<AblationConfig>& ablation_presets() {
    static const std::vector<AblationConfig> presets = [] {
        std::vector<AblationConfig> p;
        AblationConfig all;
        all.name = "all";
        all.label = "All features";
        p.push_back(all);

        AblationConfig only = all;
        only.name = "only-tweets";
        only.label = "Only tweets";
        only.description_encoding = only.url_emb = only.hashtag_emb = only.mention_emb = false;
        only.readability = only.counts = only.empath = false;
        p.push_back(only);

        auto without = [&](std::string name, std::string label, auto mutate) {
            AblationConfig c = all;
            c.name = std::move(name);
            c.label = std::move(label);
            mutate(c);
            p.push_back(c);
        };
        without("wo-urls", "W/o URLs", [](AblationConfig& c) { c.url_emb = false; });
        without("wo-hashtags", "W/o hashtags", [](AblationConfig& c) { c.hashtag_emb = false; });
        without("wo-mentions", "W/o mentions", [](AblationConfig& c) { c.mention_emb = false; });
        without("wo-entities", "W/o URLs, hashtags, mentions",
                [](AblationConfig& c) { c.url_emb = c.hashtag_emb = c.mention_emb = false; });
        without("wo-readability", "W/o readability", [](AblationConfig& c) { c.readability = false; });
        without("wo-counts", "W/o counts", [](AblationConfig& c) { c.counts = false; });
        without("wo-empath", "W/o empath", [](AblationConfig& c) { c.empath = false; });
        return p;
    }();
    return presets;
}

const AblationConfig& find_preset(std::string_view name) {
    for (const auto& p : ablation_presets()) {
        if (p.name == name) return p;
    }
    throw ConfigError("unknown ablation preset '" + std::string(name) + "'");
}

nlohmann::json UserFeatures::to_json() const {
    const auto c = counts;
    return {{"user_id", user_id},
            {"class", class_name(personality)},
            {"tweets_encoding", tweets_encoding},
            {"description_encoding", description_encoding},
            {"empath", empath},
            {"readability", readability.as_array()},
            {"counts", {c.followers, c.friends, c.media, c.listed, c.statuses, c.favourites}},
            {"hashtags", hashtags},
            {"urls", urls},
            {"mentions", mentions}};
}

UserFeatures UserFeatures::from_json(const nlohmann::json& j) {
    UserFeatures u;
    u.user_id = j.at("user_id").get<std::string>();
    u.personality = parse_class(j.at("class").get<std::string>());
    u.tweets_encoding = j.at("tweets_encoding").get<std::vector<double>>();
    u.description_encoding = j.at("description_encoding").get<std::vector<double>>();
    u.empath = j.at("empath").get<std::vector<double>>();
    u.readability = ReadabilityScores::from_array(j.at("readability").get<std::array<double, 8>>());
    const auto c = j.at("counts").get<std::array<std::uint64_t, 6>>();
    u.counts = {c[0], c[1], c[2], c[3], c[4], c[5]};
    u.hashtags = j.at("hashtags").get<std::vector<std::string>>();
    u.urls = j.at("urls").get<std::vector<std::string>>();
    u.mentions = j.at("mentions").get<std::vector<std::string>>();
    return u;
}

UserFeatures extract_user_features(const UserRecord& user, const FeatureResources& resources) {
    UserFeatures f;
    f.user_id = user.user_id;
    f.personality = user.personality_class();
    f.counts = user.counts;

    std::vector<std::vector<std::string>> tweet_tokens;
    tweet_tokens.reserve(user.tweets.size());
    std::vector<std::string> all_tokens;
    for (const auto& tweet : user.tweets) {
        auto sep = separate_entities(tweet);
        for (auto& h : sep.hashtags) f.hashtags.push_back(std::move(h));
        for (auto& m : sep.mentions) f.mentions.push_back(to_lower_ascii(m));
        for (auto& u : sep.urls) f.urls.push_back(std::move(u));
        auto tokens = tokenize(normalize(sep.clean_text));
        all_tokens.insert(all_tokens.end(), tokens.begin(), tokens.end());
        tweet_tokens.push_back(std::move(tokens));
    }

    if (resources.word_vectors) {
        f.tweets_encoding = encode_tweets_avg(tweet_tokens, *resources.word_vectors);
        const auto desc_tokens = tokenize(normalize(separate_entities(user.description).clean_text));
        f.description_encoding = encode_text_avg(desc_tokens, *resources.word_vectors);
    }
    if (resources.lexicon) {
        f.empath = all_tokens.empty() ? std::vector<double>(resources.lexicon->size(), 0.0)
                                      : resources.lexicon->score(all_tokens);
    }
    if (resources.familiar.dale) f.readability = user_readability(user, resources.familiar);
    return f;
}

bool EncoderSource::covers(const UserFeatures& user) const {
    if (!is_external()) return !user.tweets_encoding.empty();
    return tweets->contains(user.user_id) && (!description || description->contains(user.user_id));
}

FeatureVector assemble_features(const UserFeatures& user, const FeatureArtifacts& artifacts,
                                const AblationConfig& config) {
    if (!config.tweets_encoding) throw ConfigError("tweets_encoding cannot be disabled");
    FeatureVector fv;
    auto append = [&](Segment s, std::span<const double> values) {
        fv.layout.push_back({std::string(segment_name(s)), fv.values.size(), values.size()});
        fv.values.insert(fv.values.end(), values.begin(), values.end());
    };
    auto encoding = [&](Segment s, const EncodingMap* external,
                        const std::vector<double>& native) -> std::span<const double> {
        const std::string flag = s == Segment::Tweets ? "tweets_encoding" : "description_encoding";
        if (artifacts.encoder.is_external()) {
            if (!external) throw ConfigError(flag + ": encoder '" + artifacts.encoder.name + "' has no vectors");
            auto it = external->find(user.user_id);
            if (it == external->end()) {
                throw ConfigError(flag + ": encoder '" + artifacts.encoder.name + "' has no vector for user '" +
                                  user.user_id + "'");
            }
            return it->second;
        }
        if (native.empty()) throw ConfigError(flag + ": no native text encoding (word vectors not loaded)");
        return native;
    };
    auto entity = [&](const EntityEmbedder* embedder, const std::vector<std::string>& doc, const char* flag) {
        if (!embedder) throw ConfigError(std::string(flag) + ": entity embedder not available");
        return embedder->embed(doc);
    };

    for (Segment s : kSegmentOrder) {
        if (!config.enabled(s)) continue;
        switch (s) {
            case Segment::Tweets:
                append(s, encoding(s, artifacts.encoder.tweets, user.tweets_encoding));
                break;
            case Segment::Description:
                append(s, encoding(s, artifacts.encoder.description, user.description_encoding));
                break;
            case Segment::Empath:
                if (user.empath.empty()) throw ConfigError("empath: lexicon scores not available");
                append(s, user.empath);
                break;
            case Segment::Readability: {
                const auto r = user.readability.as_array();
                append(s, r);
                break;
            }
            case Segment::Counts: {
                const auto c = user.counts.as_vector();
                append(s, c);
                break;
            }
            case Segment::Url: append(s, entity(artifacts.url, user.urls, "url_emb")); break;
            case Segment::Hashtag: append(s, entity(artifacts.hashtag, user.hashtags, "hashtag_emb")); break;
            case Segment::Mention: append(s, entity(artifacts.mention, user.mentions, "mention_emb")); break;
        }
    }
    return fv;
}

}  // namespace pf
