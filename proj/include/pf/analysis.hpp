#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pf/corpus.hpp"
#include "pf/lexicon.hpp"
#include "pf/readability.hpp"

namespace pf {

struct ClassTokenScore {
    std::string token;
    PersonalityClass personality = PersonalityClass::Analyst;
    double probability = 0.0;  // users of this class holding the token / users holding it
    std::size_t support = 0;   // users holding the token
};

/// Per-token user counts for every token that reached the support threshold.
struct TokenDistribution {
    std::string token;
    std::size_t support = 0;
    std::array<std::size_t, kNumClasses> class_users{};

    double probability(PersonalityClass c) const noexcept;
};

struct ProfessionAnalysis {
    std::size_t min_support = 0;
    std::size_t top_k = 0;
    std::array<std::vector<ClassTokenScore>, kNumClasses> top;
    std::vector<TokenDistribution> tokens;  // sorted by token
};

/// Tokens of a profile description, lowercased, deduplicated and sorted.
/// Stopwords and tokens without a letter are dropped.
std::vector<std::string> description_tokens(std::string_view description, const WordList* stopwords);

/// P(class | token) over users whose description contains the token, for
/// tokens held by at least `min_support` users. Each class keeps its `top_k`
/// tokens by probability, then support (descending), then token.
ProfessionAnalysis profession_scores(std::span<const std::string> descriptions,
                                     std::span<const PersonalityClass> classes, const WordList* stopwords,
                                     std::size_t min_support = 20, std::size_t top_k = 5);

/// Per-class means of the six profile counts. Classes without users have zero means.
struct MetadataStats {
    std::array<std::size_t, kNumClasses> users{};
    std::array<std::array<double, 6>, kNumClasses> means{};
};

MetadataStats metadata_stats(std::span<const ProfileCounts> counts, std::span<const PersonalityClass> classes);

/// Per-class readability means with the min and max class of every column.
/// Ties go to the lowest class index; classes without users are not flagged.
struct ReadabilityTable {
    std::array<std::size_t, kNumClasses> users{};
    std::array<std::array<double, ReadabilityScores::kSize>, kNumClasses> means{};
    std::array<std::size_t, ReadabilityScores::kSize> min_class{};
    std::array<std::size_t, ReadabilityScores::kSize> max_class{};
};

ReadabilityTable readability_table(std::span<const ReadabilityScores> scores,
                                   std::span<const PersonalityClass> classes);

/// Everything the `analyze` stage produces.
struct AnalysisResults {
    std::uint64_t seed = 0;
    std::optional<ProfessionAnalysis> professions;
    std::optional<MetadataStats> metadata;
    std::optional<ReadabilityTable> readability;
    std::optional<std::array<std::vector<RankedCategory>, kNumClasses>> empath;

    nlohmann::json to_json() const;
    static AnalysisResults from_json(const nlohmann::json& j);
};

}  // namespace pf
