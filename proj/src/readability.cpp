#include "pf/readability.hpp"

#include <cctype>

#include "pf/error.hpp"

namespace pf {

std::array<double, ReadabilityScores::kSize> ReadabilityScores::as_array() const noexcept {
    return {flesch, flesch_kincaid, coleman_liau, dale_chall, gunning_fog, ari, linsear_write, spache};
}

ReadabilityScores ReadabilityScores::from_array(const std::array<double, kSize>& v) noexcept {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

namespace {

void require_lists(const FamiliarLists& lists) {
    if (!lists.dale || lists.dale->empty()) throw ConfigError("familiar word list 'dale' is not loaded");
    if (!lists.spache || lists.spache->empty()) throw ConfigError("familiar word list 'spache' is not loaded");
}

}  // namespace

TextStats text_stats(std::string_view text, const FamiliarLists& lists) {
    require_lists(lists);
    TextStats s;
    s.sentences = split_sentences(text).size();
    for (const auto& token : tokenize(text)) {
        ++s.words;
        for (unsigned char c : token) {
            if (std::isalpha(c)) ++s.letters;
        }
        const int syl = count_syllables(token);
        s.syllables += static_cast<std::size_t>(syl);
        if (syl >= 3) {
            ++s.complex_words;
            ++s.hard_words;
        } else {
            ++s.easy_words;
        }
        const std::string lower = to_lower_ascii(token);
        if (!lists.dale->contains(lower)) ++s.dale_unfamiliar;
        if (!lists.spache->contains(lower)) ++s.spache_unfamiliar;
    }
    return s;
}

ReadabilityScores scores_from_stats(const TextStats& s) {
    if (s.words == 0) throw ValidationError("readability: text has no words");
    if (s.sentences == 0) throw ValidationError("readability: text has no sentences");
    const double w = static_cast<double>(s.words);
    const double words_per_sentence = w / static_cast<double>(s.sentences);
    const double syllables_per_word = static_cast<double>(s.syllables) / w;
    const double letters_per_word = static_cast<double>(s.letters) / w;

    ReadabilityScores r;
    r.flesch = 206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word;
    r.flesch_kincaid = 0.39 * words_per_sentence + 11.8 * syllables_per_word - 15.59;
    r.coleman_liau = 0.0588 * (100.0 * letters_per_word) -
                     0.296 * (100.0 * static_cast<double>(s.sentences) / w) - 15.8;

    const double dale_pct = 100.0 * static_cast<double>(s.dale_unfamiliar) / w;
    r.dale_chall = 0.1579 * dale_pct + 0.0496 * words_per_sentence;
    if (dale_pct > 5.0) r.dale_chall += 3.6365;

    r.gunning_fog = 0.4 * (words_per_sentence + 100.0 * static_cast<double>(s.complex_words) / w);
    r.ari = 4.71 * letters_per_word + 0.5 * words_per_sentence - 21.43;

    const double linsear = (static_cast<double>(s.easy_words) + 3.0 * static_cast<double>(s.hard_words)) /
                           static_cast<double>(s.sentences);
    r.linsear_write = linsear <= 20.0 ? linsear / 2.0 - 1.0 : linsear / 2.0;

    r.spache = 0.141 * words_per_sentence + 0.086 * (100.0 * static_cast<double>(s.spache_unfamiliar) / w) + 0.839;
    return r;
}

ReadabilityScores compute_readability(std::string_view text, const FamiliarLists& lists) {
    return scores_from_stats(text_stats(text, lists));
}

ReadabilityScores user_readability(const UserRecord& user, const FamiliarLists& lists) {
    require_lists(lists);
    std::array<double, ReadabilityScores::kSize> sum{};
    std::size_t scored = 0;
    for (const auto& tweet : user.tweets) {
        const std::string text = normalize(separate_entities(tweet).clean_text);
        const TextStats stats = text_stats(text, lists);
        if (stats.words == 0) continue;
        const auto v = scores_from_stats(stats).as_array();
        for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
        ++scored;
    }
    if (scored == 0) throw ValidationError("user '" + user.user_id + "' has no scoreable tweets");
    for (auto& x : sum) x /= static_cast<double>(scored);
    return ReadabilityScores::from_array(sum);
}

}  // namespace pf
