#include "pf/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "pf/error.hpp"
#include "pf/rng.hpp"

namespace pf {

using nlohmann::json;

std::string_view class_name(PersonalityClass c) noexcept {
    switch (c) {
        case PersonalityClass::Analyst: return "Analyst";
        case PersonalityClass::Diplomat: return "Diplomat";
        case PersonalityClass::Sentinel: return "Sentinel";
        case PersonalityClass::Explorer: return "Explorer";
    }
    return "?";
}

PersonalityClass parse_class(std::string_view name) {
    const std::string lower = to_lower_ascii(name);
    for (auto c : kAllClasses) {
        if (to_lower_ascii(class_name(c)) == lower) return c;
    }
    throw ValidationError("unknown personality class '" + std::string(name) + "'");
}

namespace {

constexpr std::array<std::string_view, 4> kAxes = {"ie", "ns", "tf", "jp"};

}  // namespace

bool MbtiType::is_valid(std::string_view code) noexcept {
    if (code.size() != 4) return false;
    for (std::size_t i = 0; i < 4; ++i) {
        char c = code[i];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (kAxes[i].find(c) == std::string_view::npos) return false;
    }
    return true;
}

MbtiType MbtiType::parse(std::string_view code) {
    const std::string lower = to_lower_ascii(code);
    for (std::size_t i = 0; i < std::min<std::size_t>(lower.size(), 4); ++i) {
        if (kAxes[i].find(lower[i]) == std::string_view::npos) {
            throw ValidationError("invalid MBTI code '" + std::string(code) + "': character " +
                                  std::to_string(i + 1) + " ('" + lower[i] + "') must be one of '" +
                                  kAxes[i][0] + "','" + kAxes[i][1] + "'");
        }
    }
    if (lower.size() != 4) {
        throw ValidationError("invalid MBTI code '" + std::string(code) + "': expected 4 characters, got " +
                              std::to_string(lower.size()) + " (position " +
                              std::to_string(std::min<std::size_t>(lower.size(), 4) + 1) + ")");
    }
    return MbtiType(lower);
}

PersonalityClass map_class(const MbtiType& type) noexcept {
    const std::string& c = type.code();
    if (c[1] == 'n') return c[2] == 't' ? PersonalityClass::Analyst : PersonalityClass::Diplomat;
    return c[3] == 'j' ? PersonalityClass::Sentinel : PersonalityClass::Explorer;
}

PersonalityClass map_class(std::string_view code) { return map_class(MbtiType::parse(code)); }

std::array<double, 6> ProfileCounts::as_vector() const noexcept {
    return {static_cast<double>(followers), static_cast<double>(friends), static_cast<double>(media),
            static_cast<double>(listed),    static_cast<double>(statuses), static_cast<double>(favourites)};
}

PersonalityClass UserRecord::personality_class() const {
    if (!label) throw ValidationError("user '" + user_id + "' has no MBTI label");
    return map_class(*label);
}

LabelResult derive_label(std::span<const std::string> tweets) {
    static constexpr std::string_view kHost = "16personalities.com/";
    static constexpr std::string_view kSuffix = "-personality";
    std::set<std::string> codes;
    for (const auto& tweet : tweets) {
        const std::string lower = to_lower_ascii(tweet);
        std::size_t pos = 0;
        while ((pos = lower.find(kHost, pos)) != std::string::npos) {
            pos += kHost.size();
            const std::string_view rest = std::string_view(lower).substr(pos);
            if (rest.size() >= 4 + kSuffix.size() && rest.substr(4, kSuffix.size()) == kSuffix &&
                MbtiType::is_valid(rest.substr(0, 4))) {
                codes.emplace(rest.substr(0, 4));
            }
        }
    }
    LabelResult result;
    result.candidates.assign(codes.begin(), codes.end());
    if (codes.size() == 1) {
        result.status = LabelStatus::Found;
        result.type = MbtiType::parse(*codes.begin());
    } else if (codes.size() > 1) {
        result.status = LabelStatus::Ambiguous;
    }
    return result;
}

LabelResult resolve_label(const UserRecord& user) {
    LabelResult derived = derive_label(user.tweets);
    if (!user.label) return derived;
    std::set<std::string> codes(derived.candidates.begin(), derived.candidates.end());
    codes.insert(user.label->code());
    LabelResult result;
    result.candidates.assign(codes.begin(), codes.end());
    if (codes.size() == 1) {
        result.status = LabelStatus::Found;
        result.type = user.label;
    } else {
        result.status = LabelStatus::Ambiguous;
    }
    return result;
}

std::vector<UserRecord> filter_eligible(std::vector<UserRecord> users, const EnglishDetector& detector,
                                        std::size_t min_english_tweets) {
    std::vector<UserRecord> kept;
    for (auto& user : users) {
        std::vector<std::string> english;
        std::vector<std::string> english_tags;
        for (std::size_t i = 0; i < user.tweets.size(); ++i) {
            std::optional<std::string> tag;
            if (user.lang) tag = (*user.lang)[i];
            if (detector.is_english(user.tweets[i], tag)) {
                english.push_back(std::move(user.tweets[i]));
                if (tag) english_tags.push_back(*tag);
            }
        }
        if (english.size() < min_english_tweets) continue;
        user.tweets = std::move(english);
        if (user.lang) user.lang = std::move(english_tags);
        kept.push_back(std::move(user));
    }
    return kept;
}

CorpusSplit balanced_split(std::span<const UserRecord> users, std::size_t n_train_per_class,
                           std::size_t n_test_per_class, std::uint64_t seed) {
    CorpusSplit split;
    split.seed = seed;
    std::array<std::vector<std::size_t>, kNumClasses> pools;
    for (std::size_t i = 0; i < users.size(); ++i) {
        pools[class_index(users[i].personality_class())].push_back(i);
    }
    for (auto cls : kAllClasses) {
        const std::size_t k = class_index(cls);
        auto& pool = pools[k];
        Rng rng(mix_seed(seed, k));
        rng.shuffle(std::span(pool));
        const std::size_t n_train = std::min(n_train_per_class, pool.size());
        const std::size_t n_test = std::min(n_test_per_class, pool.size() - n_train);
        if (pool.size() < n_train_per_class + n_test_per_class) {
            split.warnings.push_back(std::string(class_name(cls)) + ": requested " +
                                     std::to_string(n_train_per_class) + "+" + std::to_string(n_test_per_class) +
                                     " users, only " + std::to_string(pool.size()) + " available");
        }
        for (std::size_t j = 0; j < n_train; ++j) split.train.push_back(users[pool[j]]);
        for (std::size_t j = n_train; j < n_train + n_test; ++j) split.test.push_back(users[pool[j]]);
        split.train_counts[k] = n_train;
        split.test_counts[k] = n_test;
    }
    return split;
}

namespace {

template <typename T>
T required(const json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(std::string("missing field '") + key + "'", line);
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw SchemaError(std::string("field '") + key + "' has the wrong type", line);
    }
}

}  // namespace

UserRecord parse_user_record(std::string_view line, std::size_t line_number) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what(), line_number);
    }
    if (!obj.is_object()) throw SchemaError("record is not a JSON object", line_number);

    UserRecord user;
    user.user_id = required<std::string>(obj, "user_id", line_number);
    if (obj.contains("description")) user.description = required<std::string>(obj, "description", line_number);
    user.tweets = required<std::vector<std::string>>(obj, "tweets", line_number);
    if (user.tweets.size() > kMaxTweetsPerUser) {
        throw SchemaError("user '" + user.user_id + "' has " + std::to_string(user.tweets.size()) +
                              " tweets (limit 3200)",
                          line_number);
    }
    if (obj.contains("lang") && !obj["lang"].is_null()) {
        user.lang = required<std::vector<std::string>>(obj, "lang", line_number);
        if (user.lang->size() != user.tweets.size()) {
            throw SchemaError("'lang' has " + std::to_string(user.lang->size()) + " entries for " +
                                  std::to_string(user.tweets.size()) + " tweets",
                              line_number);
        }
    }
    const json counts = required<json>(obj, "counts", line_number);
    if (!counts.is_object()) throw SchemaError("'counts' is not an object", line_number);
    std::array<std::uint64_t*, 6> slots = {&user.counts.followers, &user.counts.friends, &user.counts.media,
                                           &user.counts.listed,    &user.counts.statuses, &user.counts.favourites};
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const std::string key(ProfileCounts::kFieldNames[i]);
        auto it = counts.find(key);
        if (it == counts.end()) throw SchemaError("missing count '" + key + "'", line_number);
        if (!it->is_number_unsigned()) {
            throw SchemaError("count '" + key + "' must be a nonnegative integer", line_number);
        }
        *slots[i] = it->get<std::uint64_t>();
    }
    if (obj.contains("label") && !obj["label"].is_null()) {
        const auto code = required<std::string>(obj, "label", line_number);
        if (!code.empty()) {
            try {
                user.label = MbtiType::parse(code);
            } catch (const ValidationError& e) {
                throw SchemaError(e.what(), line_number);
            }
        }
    }
    return user;
}

json user_record_to_json(const UserRecord& user) {
    json obj;
    obj["user_id"] = user.user_id;
    obj["description"] = user.description;
    obj["tweets"] = user.tweets;
    if (user.lang) obj["lang"] = *user.lang;
    json counts = json::object();
    const auto values = std::array<std::uint64_t, 6>{user.counts.followers, user.counts.friends,
                                                     user.counts.media,     user.counts.listed,
                                                     user.counts.statuses,  user.counts.favourites};
    for (std::size_t i = 0; i < values.size(); ++i) counts[std::string(ProfileCounts::kFieldNames[i])] = values[i];
    obj["counts"] = counts;
    if (user.label) obj["label"] = user.label->code();
    return obj;
}

std::vector<UserRecord> read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read corpus " + path.string());
    std::vector<UserRecord> users;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        users.push_back(parse_user_record(line, line_number));
    }
    return users;
}

void write_corpus(const std::filesystem::path& path, std::span<const UserRecord> users) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& user : users) out << user_record_to_json(user).dump() << '\n';
}

json split_manifest(const CorpusSplit& split) {
    auto side = [](const std::vector<UserRecord>& users, const std::array<std::size_t, kNumClasses>& counts) {
        json counts_obj = json::object();
        for (auto c : kAllClasses) counts_obj[std::string(class_name(c))] = counts[class_index(c)];
        json ids = json::array();
        for (const auto& u : users) ids.push_back(u.user_id);
        return json{{"counts", counts_obj}, {"user_ids", ids}};
    };
    return json{{"seed", split.seed},
                {"train", side(split.train, split.train_counts)},
                {"test", side(split.test, split.test_counts)},
                {"warnings", split.warnings}};
}

SplitIds read_split_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingArtifactError("split manifest not found: " + path.string());
    try {
        const json doc = json::parse(in);
        SplitIds ids;
        ids.seed = doc.at("seed").get<std::uint64_t>();
        ids.train = doc.at("train").at("user_ids").get<std::vector<std::string>>();
        ids.test = doc.at("test").at("user_ids").get<std::vector<std::string>>();
        return ids;
    } catch (const json::exception& e) {
        throw SchemaError("bad split manifest " + path.string() + ": " + e.what());
    }
}

}  // namespace pf
