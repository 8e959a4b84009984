#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pf/textproc.hpp"

namespace pf {

enum class PersonalityClass : std::uint8_t { Analyst = 0, Diplomat = 1, Sentinel = 2, Explorer = 3 };

inline constexpr std::size_t kNumClasses = 4;
inline constexpr std::array<PersonalityClass, kNumClasses> kAllClasses = {
    PersonalityClass::Analyst, PersonalityClass::Diplomat, PersonalityClass::Sentinel,
    PersonalityClass::Explorer};

constexpr std::size_t class_index(PersonalityClass c) noexcept { return static_cast<std::size_t>(c); }
std::string_view class_name(PersonalityClass c) noexcept;
PersonalityClass parse_class(std::string_view name);

/// One of the 16 four-letter MBTI codes, stored lowercase.
class MbtiType {
public:
    /// Accepts any case; throws ValidationError naming the first bad position (1-based).
    static MbtiType parse(std::string_view code);
    static bool is_valid(std::string_view code) noexcept;

    const std::string& code() const noexcept { return code_; }
    bool operator==(const MbtiType&) const = default;
    auto operator<=>(const MbtiType&) const = default;

private:
    explicit MbtiType(std::string code) : code_(std::move(code)) {}
    std::string code_;
};

/// N+T Analyst, N+F Diplomat, S+J Sentinel, S+P Explorer.
PersonalityClass map_class(const MbtiType& type) noexcept;
PersonalityClass map_class(std::string_view code);

struct ProfileCounts {
    std::uint64_t followers = 0;
    std::uint64_t friends = 0;
    std::uint64_t media = 0;
    std::uint64_t listed = 0;
    std::uint64_t statuses = 0;
    std::uint64_t favourites = 0;

    static constexpr std::array<std::string_view, 6> kFieldNames = {
        "followers", "friends", "media", "listed", "statuses", "favourites"};

    std::array<double, 6> as_vector() const noexcept;
    bool operator==(const ProfileCounts&) const = default;
};

inline constexpr std::size_t kMaxTweetsPerUser = 3200;

struct UserRecord {
    std::string user_id;
    std::string description;
    std::vector<std::string> tweets;
    std::optional<std::vector<std::string>> lang;  // aligned with tweets when present
    ProfileCounts counts;
    std::optional<MbtiType> label;

    /// Throws ValidationError when the record carries no label.
    PersonalityClass personality_class() const;
};

// --- label derivation ------------------------------------------------------

enum class LabelStatus { Found, None, Ambiguous };

struct LabelResult {
    LabelStatus status = LabelStatus::None;
    std::optional<MbtiType> type;
    std::vector<std::string> candidates;  // distinct valid codes seen, sorted
};

/// Scans raw tweets for `16personalities.com/<ptype>-personality` links
/// (case-insensitive) and resolves the user's type when exactly one distinct
/// valid code occurs.
LabelResult derive_label(std::span<const std::string> tweets);

/// Combines a pre-resolved label with link evidence: the union of both must
/// hold exactly one type.
LabelResult resolve_label(const UserRecord& user);

// --- eligibility and sampling ----------------------------------------------

/// Keeps users with at least `min_english_tweets` English tweets, dropping
/// their other tweets. Input order is preserved.
std::vector<UserRecord> filter_eligible(std::vector<UserRecord> users, const EnglishDetector& detector,
                                        std::size_t min_english_tweets = 100);

struct CorpusSplit {
    std::vector<UserRecord> train;
    std::vector<UserRecord> test;
    std::uint64_t seed = 0;
    std::array<std::size_t, kNumClasses> train_counts{};
    std::array<std::size_t, kNumClasses> test_counts{};
    std::vector<std::string> warnings;
};

/// Per class (fixed class order): collect that class's users in input order,
/// Fisher-Yates shuffle them with Rng(mix_seed(seed, class_index)), take the
/// first `n_train_per_class` as train and the next `n_test_per_class` as test.
/// Short classes are filled train-first and produce a warning.
CorpusSplit balanced_split(std::span<const UserRecord> users, std::size_t n_train_per_class,
                           std::size_t n_test_per_class, std::uint64_t seed);

// --- files -----------------------------------------------------------------

/// Parses one corpus JSONL line. `line_number` is used in SchemaError messages.
UserRecord parse_user_record(std::string_view line, std::size_t line_number);
nlohmann::json user_record_to_json(const UserRecord& user);

/// Reads a whole JSONL corpus; blank lines are skipped.
std::vector<UserRecord> read_corpus(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path, std::span<const UserRecord> users);

nlohmann::json split_manifest(const CorpusSplit& split);

struct SplitIds {
    std::uint64_t seed = 0;
    std::vector<std::string> train;
    std::vector<std::string> test;
};
SplitIds read_split_manifest(const std::filesystem::path& path);

}  // namespace pf
