#pragma once

#include <array>
#include <string>
#include <vector>

#include "pf/readability.hpp"

namespace pf::testing {

/// Twenty sentences with tiny familiar lists; the counts below were tallied
/// by hand, word by word, under the documented syllable and tokenization rules.
inline const std::vector<std::string> kFixtureSentences = {
    "The cat sat on the mat.",
    "A dog ran to the park!",
    "Is it raining again today?",
    "My neighbor bought a beautiful umbrella.",
    "We walked along the river slowly.",
    "Children played happily in the garden.",
    "The teacher explained the difficult lesson.",
    "She opened the window and smiled.",
    "Computers calculate numbers very quickly.",
    "Birds were singing before sunrise.",
    "He finished his homework early.",
    "The little table wobbled.",
    "Do you remember that summer?",
    "Our family visited the museum yesterday.",
    "Elephants are enormous animals.",
    "Please close the door.",
    "The bakery sells fresh bread every morning.",
    "Nobody expected such an unusual ending!",
    "I like apples.",
    "Everything became quiet again.",
};

inline const std::vector<std::string> kFixtureDale = {"the", "a", "cat", "dog", "sat", "on", "mat", "ran", "to",
                                                      "park", "is", "it", "my", "we", "she", "he", "i", "do",
                                                      "you", "and", "in"};
inline const std::vector<std::string> kFixtureSpache = {"the", "a", "cat", "dog", "i", "like", "apples"};

struct FixtureCounts {
    double words = 105, sentences = 20, syllables = 183, letters = 531, complex = 23;
    double dale_unfamiliar = 72, spache_unfamiliar = 86, easy = 82, hard = 23;
};

/// The eight formulas evaluated on hand counts.
inline std::array<double, 8> hand_scores(const FixtureCounts& c) {
    const double wps = c.words / c.sentences;
    const double spw = c.syllables / c.words;
    const double dale_pct = 100.0 * c.dale_unfamiliar / c.words;
    const double r = (c.easy + 3.0 * c.hard) / c.sentences;
    return {
        206.835 - 1.015 * wps - 84.6 * spw,
        0.39 * wps + 11.8 * spw - 15.59,
        0.0588 * (100.0 * c.letters / c.words) - 0.296 * (100.0 * c.sentences / c.words) - 15.8,
        0.1579 * dale_pct + 0.0496 * wps + (dale_pct > 5.0 ? 3.6365 : 0.0),
        0.4 * (wps + 100.0 * c.complex / c.words),
        4.71 * (c.letters / c.words) + 0.5 * wps - 21.43,
        r <= 20.0 ? r / 2.0 - 1.0 : r / 2.0,
        0.141 * wps + 0.086 * (100.0 * c.spache_unfamiliar / c.words) + 0.839,
    };
}

inline std::string fixture_text() {
    std::string text;
    for (const auto& s : kFixtureSentences) text += (text.empty() ? "" : " ") + s;
    return text;
}

}  // namespace pf::testing
