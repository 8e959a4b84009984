#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pf/corpus.hpp"
#include "pf/word_vectors.hpp"

namespace pf {

/// Knobs for the synthetic four-class corpus.
struct SynthParams {
    std::size_t users_per_class = 1000;
    std::size_t min_tweets = 110;
    std::size_t max_tweets = 140;
    /// Fraction of users whose tweets, URLs and mentions follow another class;
    /// their hashtags, professions and counts still follow their own class.
    double style_noise = 0.12;
    /// Probability that a hashtag comes from the user's class pool rather than the shared pool.
    double hashtag_specificity = 0.7;
    double hashtag_rate = 0.3;   // hashtags per tweet (Bernoulli)
    double mention_rate = 0.2;
    double url_rate = 0.1;
    double profession_rate = 0.6;  // users whose description names a profession
    double link_label_rate = 0.1;  // labels given only as a personality-test link
    double untagged_rate = 0.2;    // users without per-tweet language tags
    std::size_t ambiguous_users = 8;   // extra users linking two different types
    std::size_t ineligible_users = 8;  // extra users with min_english_tweets - 1 English tweets
    std::size_t min_english_tweets = 100;  // eligibility threshold the corpus is built around
    std::size_t dim = 32;
    std::uint64_t seed = 1;
};

struct SynthCorpus {
    std::vector<UserRecord> users;
    WordVectorTable vectors;
    std::array<std::vector<std::string>, kNumClasses> professions;     // class-exclusive description tokens
    std::array<std::vector<std::string>, kNumClasses> class_words;     // class-specific tweet vocabulary
    std::array<std::vector<std::string>, kNumClasses> class_hashtags;
    /// Multiplier applied to each count field's base level, per class.
    std::array<std::array<double, 6>, kNumClasses> count_scale{};
};

/// Deterministic in `params`. Every user except the planted ambiguous and
/// ineligible ones survives ingestion.
SynthCorpus generate_corpus(const SynthParams& params);

}  // namespace pf
