#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pf/corpus.hpp"
#include "pf/word_vectors.hpp"

namespace pf {

/// Ordered set of named term categories (Empath-style).
///
/// File format: TSV, `category<TAB>term1 term2 ...`, one category per line.
class Lexicon {
public:
    struct Category {
        std::string name;
        std::set<std::string> terms;
    };

    Lexicon() = default;
    /// Throws ValidationError on duplicate category names.
    explicit Lexicon(std::vector<Category> categories);

    static Lexicon load(const std::filesystem::path& path);

    std::size_t size() const noexcept { return categories_.size(); }
    const std::vector<Category>& categories() const noexcept { return categories_; }
    std::vector<std::string> names() const;

    /// Entry i = tokens in category i / total tokens. Empty input is a ValidationError.
    std::vector<double> score(std::span<const std::string> tokens) const;

private:
    std::vector<Category> categories_;
    std::unordered_map<std::string, std::vector<std::size_t>> membership_;
};

/// Seeds plus the `k` non-seed vocabulary terms with highest mean cosine
/// similarity to the seed vectors (ties: lexicographic).
std::set<std::string> expand_seeds(const std::set<std::string>& seeds, const WordVectorTable& vectors, std::size_t k);

struct RankedCategory {
    std::string name;
    double distinctiveness = 0.0;
    double mean_in_class = 0.0;
    double mean_outside = 0.0;
};

inline constexpr double kDistinctivenessEpsilon = 1e-9;

/// Per class: mean score in class / max(mean score elsewhere, 1e-9), top
/// `top_k` per class, ties (12 significant digits) lexicographic. Every class needs at least one user.
std::array<std::vector<RankedCategory>, kNumClasses> distinct_categories(
    std::span<const std::vector<double>> per_user_scores, std::span<const PersonalityClass> classes,
    std::span<const std::string> category_names, std::size_t top_k);

}  // namespace pf
