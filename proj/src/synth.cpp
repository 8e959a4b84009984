#include "pf/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>

#include "pf/rng.hpp"

namespace pf {

namespace {

using Words = std::vector<std::string>;

const Words kCommon = {"the",  "and",   "to",    "of",    "a",     "in",    "is",   "it",    "you",   "that",
                       "was",  "for",   "on",    "are",   "with",  "as",    "this", "be",    "at",    "have",
                       "from", "or",    "one",   "had",   "by",    "but",   "not",  "what",  "all",   "were",
                       "we",   "when",  "your",  "can",   "said",  "there", "use",  "an",    "each",  "which",
                       "do",   "how",   "their", "if",    "will",  "up",    "other", "about", "out",  "many",
                       "then", "them",  "these", "so",    "some",  "would", "make", "like",  "time",  "has",
                       "look", "more",  "day",   "could", "go",    "come",  "did",  "my",    "no",    "most",
                       "who",  "over",  "know",  "than",  "call",  "first", "down", "side",  "been",  "now",
                       "find", "today", "really", "good", "new",   "just",  "very", "people", "think", "week"};

const std::array<Words, kNumClasses> kClassWords = {{
    {"logic", "theory", "system", "data", "analysis", "strategy", "science", "research", "code", "algorithm",
     "physics", "model", "proof", "debate", "evidence", "engine", "compute", "optimize", "hypothesis", "framework"},
    {"love", "hope", "dream", "heart", "feel", "kindness", "art", "soul", "peace", "inspire",
     "poetry", "gentle", "empathy", "believe", "grateful", "beauty", "compassion", "spirit", "healing", "story"},
    {"family", "duty", "plan", "schedule", "tradition", "church", "office", "order", "rules", "home",
     "budget", "routine", "garden", "organized", "loyal", "responsible", "savings", "neighbor", "chores", "meeting"},
    {"party", "adventure", "travel", "beach", "game", "fun", "sport", "concert", "dance", "wild",
     "festival", "surf", "road", "action", "thrill", "skate", "camping", "hike", "race", "spontaneous"},
}};

const std::array<Words, kNumClasses> kClassHashtags = {{
    {"coding", "math", "chess", "ai", "robotics", "space", "datascience", "opensource", "quantum", "linux"},
    {"poetry", "selfcare", "mindfulness", "kindness", "writing", "art", "yoga", "inspiration", "hope", "bookworm"},
    {"family", "faith", "homemade", "gardening", "budgeting", "mealprep", "organization", "teacherlife",
     "community", "volunteer"},
    {"travel", "adventure", "fitness", "party", "roadtrip", "surfing", "festival", "sports", "wanderlust",
     "nightlife"},
}};

const Words kSharedHashtags = {"monday", "tbt", "news",  "weekend", "follow", "photo", "happy", "music",
                               "fun2",   "mood", "viral", "summer", "coffee", "friday", "trending", "life",
                               "goals",  "blessed", "memes", "today"};

const std::array<Words, kNumClasses> kProfessions = {{
    {"engineer", "physicist", "programmer"},
    {"poet", "counselor", "novelist"},
    {"dentist", "accountant", "auditor"},
    {"photographer", "bartender", "surfer"},
}};

const Words kDescriptionWords = {"coffee", "lover", "fan",    "life",  "dreamer", "mom",   "dad",  "student",
                                 "music",  "dog",   "cat",    "books", "pizza",   "proud", "human", "opinions",
                                 "own",    "tweets", "nerd",  "foodie", "runner", "gamer", "movies", "sunshine"};

const std::array<Words, kNumClasses> kTypes = {{
    {"intj", "intp", "entj", "entp"},
    {"infj", "infp", "enfj", "enfp"},
    {"istj", "isfj", "estj", "esfj"},
    {"istp", "isfp", "estp", "esfp"},
}};

// Base levels for followers, friends, media, listed, statuses, favourites.
constexpr std::array<double, 6> kCountBase = {400.0, 350.0, 200.0, 5.0, 3000.0, 5000.0};

// Each class scales each field by 1.3^rank, which plants a strict ordering of class means.
constexpr std::array<std::array<int, 6>, kNumClasses> kCountRank = {{
    {1, 0, 0, 3, 1, 0},
    {3, 3, 2, 2, 2, 3},
    {0, 1, 1, 1, 0, 1},
    {2, 2, 3, 0, 3, 2},
}};

const std::string& pick(const Words& words, Rng& rng) { return words[rng.below(words.size())]; }

std::string make_tweet(std::size_t style, const SynthParams& p, std::size_t true_class, Rng& rng) {
    std::string t;
    const std::size_t sentences = 1 + rng.below(2);
    for (std::size_t s = 0; s < sentences; ++s) {
        const std::size_t words = 5 + rng.below(8);
        for (std::size_t w = 0; w < words; ++w) {
            std::string word = rng.uniform() < 0.3 ? pick(kClassWords[style], rng) : pick(kCommon, rng);
            if (w == 0 && s == 0) word[0] = static_cast<char>(word[0] - 'a' + 'A');
            if (!t.empty()) t += ' ';
            t += word;
        }
        t += rng.uniform() < 0.2 ? "!" : ".";
    }
    if (rng.uniform() < p.hashtag_rate) {
        t += " #" + (rng.uniform() < p.hashtag_specificity ? pick(kClassHashtags[true_class], rng)
                                                            : pick(kSharedHashtags, rng));
    }
    if (rng.uniform() < p.mention_rate) {
        t += rng.uniform() < 0.3 ? " @" + std::string(class_name(kAllClasses[style])) + "_fan" +
                                       std::to_string(rng.below(8))
                                 : " @user" + std::to_string(rng.below(30));
    }
    if (rng.uniform() < p.url_rate) {
        t += rng.uniform() < 0.3 ? " https://" + to_lower_ascii(class_name(kAllClasses[style])) + ".example.com/p" +
                                       std::to_string(rng.below(5))
                                 : " https://t.example/s" + std::to_string(rng.below(20));
    }
    if (rng.uniform() < 0.05) t += " \xF0\x9F\x8E\x89";  // party popper
    return t;
}

std::string make_description(std::size_t true_class, const SynthParams& p, Rng& rng) {
    std::string d;
    const std::size_t words = 3 + rng.below(5);
    for (std::size_t w = 0; w < words; ++w) {
        if (!d.empty()) d += ' ';
        d += pick(kDescriptionWords, rng);
    }
    if (rng.uniform() < p.profession_rate) d += " | " + pick(kProfessions[true_class], rng);
    return d;
}

ProfileCounts make_counts(std::size_t true_class, const std::array<std::array<double, 6>, kNumClasses>& scale,
                          Rng& rng) {
    std::array<std::uint64_t, 6> v{};
    for (std::size_t f = 0; f < 6; ++f) {
        const double level = kCountBase[f] * scale[true_class][f] * std::exp(0.8 * rng.normal() - 0.32);
        v[f] = static_cast<std::uint64_t>(std::llround(level));
    }
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

WordVectorTable make_vectors(std::size_t dim, Rng& rng) {
    WordVectorTable table(dim);
    std::vector<double> v(dim);
    std::array<std::vector<double>, kNumClasses> centroid;
    for (auto& c : centroid) {
        c.resize(dim);
        for (auto& x : c) x = rng.normal();
    }
    auto add = [&](const std::string& word, const std::vector<double>* centre) {
        if (table.find(word)) return;
        for (std::size_t i = 0; i < dim; ++i) v[i] = 0.8 * rng.normal() + (centre ? (*centre)[i] : 0.0);
        table.add(word, v);
    };
    for (const auto& w : kCommon) add(w, nullptr);
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        for (const auto& w : kClassWords[k]) add(w, &centroid[k]);
    }
    for (const auto& w : kDescriptionWords) add(w, nullptr);
    return table;
}

}  // namespace

SynthCorpus generate_corpus(const SynthParams& p) {
    Rng rng(mix_seed(p.seed, stream_id("synth")));
    SynthCorpus out;
    out.vectors = make_vectors(p.dim, rng);
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        out.professions[k] = kProfessions[k];
        out.class_words[k] = kClassWords[k];
        out.class_hashtags[k] = kClassHashtags[k];
        for (std::size_t f = 0; f < 6; ++f) out.count_scale[k][f] = std::pow(1.3, kCountRank[k][f]);
    }

    std::vector<std::size_t> classes;
    for (std::size_t k = 0; k < kNumClasses; ++k) classes.insert(classes.end(), p.users_per_class, k);
    rng.shuffle(std::span(classes));

    auto base_user = [&](std::size_t true_class, std::size_t id) {
        UserRecord u;
        u.user_id = "u" + std::to_string(100000 + id);
        u.description = make_description(true_class, p, rng);
        u.counts = make_counts(true_class, out.count_scale, rng);
        return u;
    };

    std::size_t next_id = 0;
    for (std::size_t true_class : classes) {
        UserRecord u = base_user(true_class, next_id++);
        std::size_t style = true_class;
        if (rng.uniform() < p.style_noise) style = (true_class + 1 + rng.below(kNumClasses - 1)) % kNumClasses;
        const std::size_t n = p.min_tweets + rng.below(p.max_tweets - p.min_tweets + 1);
        const bool tagged = rng.uniform() >= p.untagged_rate;
        std::vector<std::string> lang;
        for (std::size_t i = 0; i < n; ++i) {
            u.tweets.push_back(make_tweet(style, p, true_class, rng));
            lang.push_back("en");
        }
        if (tagged) {
            // A few foreign-language tweets that filtering must remove.
            const std::size_t foreign = rng.below(6);
            for (std::size_t i = 0; i < foreign; ++i) {
                u.tweets.push_back("hola que tal amigos hoy es un buen dia");
                lang.push_back("es");
            }
            u.lang = std::move(lang);
        }
        const std::string& type = pick(kTypes[true_class], rng);
        if (rng.uniform() < p.link_label_rate) {
            u.tweets.push_back("Just took the test https://www.16personalities.com/" + type + "-personality");
            if (u.lang) u.lang->push_back("en");
        } else {
            u.label = MbtiType::parse(type);
        }
        out.users.push_back(std::move(u));
    }

    for (std::size_t i = 0; i < p.ambiguous_users; ++i) {
        const std::size_t k = i % kNumClasses;
        UserRecord u = base_user(k, next_id++);
        for (std::size_t t = 0; t < p.min_tweets; ++t) u.tweets.push_back(make_tweet(k, p, k, rng));
        u.tweets.push_back("me https://www.16personalities.com/" + kTypes[k][0] + "-personality");
        u.tweets.push_back("or maybe https://www.16personalities.com/" + kTypes[(k + 1) % kNumClasses][0] +
                           "-personality");
        out.users.push_back(std::move(u));
    }
    for (std::size_t i = 0; i < p.ineligible_users; ++i) {
        const std::size_t k = i % kNumClasses;
        UserRecord u = base_user(k, next_id++);
        u.label = MbtiType::parse(kTypes[k][1]);
        std::vector<std::string> lang;
        for (std::size_t t = 0; t + 1 < p.min_english_tweets; ++t) {
            u.tweets.push_back(make_tweet(k, p, k, rng));
            lang.push_back("en");
        }
        for (std::size_t t = 0; t < 40; ++t) {
            u.tweets.push_back("hola que tal amigos hoy es un buen dia");
            lang.push_back("es");
        }
        u.lang = std::move(lang);
        out.users.push_back(std::move(u));
    }
    return out;
}

}  // namespace pf
