#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "pf/corpus.hpp"
#include "pf/textproc.hpp"

namespace pf {

struct ReadabilityScores {
    double flesch = 0.0;
    double flesch_kincaid = 0.0;
    double coleman_liau = 0.0;
    double dale_chall = 0.0;
    double gunning_fog = 0.0;
    double ari = 0.0;
    double linsear_write = 0.0;
    double spache = 0.0;

    static constexpr std::size_t kSize = 8;
    static constexpr std::array<std::string_view, kSize> kNames = {
        "flesch", "flesch_kincaid", "coleman_liau", "dale_chall",
        "gunning_fog", "ari", "linsear_write", "spache"};

    std::array<double, kSize> as_array() const noexcept;
    static ReadabilityScores from_array(const std::array<double, kSize>& v) noexcept;
};

/// Familiar-word lists used by Dale-Chall and SPACHE. Non-owning.
struct FamiliarLists {
    const WordList* dale = nullptr;
    const WordList* spache = nullptr;
};

/// Raw counts the formulas are built from.
struct TextStats {
    std::size_t words = 0;
    std::size_t sentences = 0;
    std::size_t syllables = 0;
    std::size_t letters = 0;
    std::size_t complex_words = 0;    // >= 3 syllables
    std::size_t dale_unfamiliar = 0;
    std::size_t spache_unfamiliar = 0;
    std::size_t easy_words = 0;       // <= 2 syllables
    std::size_t hard_words = 0;       // >= 3 syllables
};

TextStats text_stats(std::string_view text, const FamiliarLists& lists);

/// Throws ValidationError if `stats` has no words or no sentences.
ReadabilityScores scores_from_stats(const TextStats& stats);

/// Throws ValidationError on text without words, ConfigError when a familiar list is missing.
ReadabilityScores compute_readability(std::string_view text, const FamiliarLists& lists);

/// Mean of per-tweet scores over the user's separated, normalized tweets.
/// Tweets without tokens are skipped; a user with none left is a ValidationError.
ReadabilityScores user_readability(const UserRecord& user, const FamiliarLists& lists);

}  // namespace pf
