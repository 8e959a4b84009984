#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace pf {

/// A set of lowercase words loaded from a one-word-per-line UTF-8 file.
class WordList {
public:
    WordList() = default;
    explicit WordList(std::vector<std::string> words);

    static WordList load(const std::filesystem::path& path);

    bool contains(std::string_view word) const;
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
    };
    std::unordered_set<std::string, Hash, std::equal_to<>> words_;
};

struct SeparatedTweet {
    std::string clean_text;
    std::vector<std::string> hashtags;  // lowercase, without '#'
    std::vector<std::string> mentions;  // without '@'
    std::vector<std::string> urls;
    std::vector<std::string> emojis;    // one entry per contiguous emoji sequence
};

/// Splits a raw tweet into clean text and its hashtags, mentions, URLs and emoji.
///
/// Tokens are whitespace-delimited. A token starting with `http://`, `https://`
/// or `www.` (any case) is a URL. `#` or `@` followed by at least one word
/// character starts a hashtag or mention that spans the word characters; any
/// remainder of the token is processed again. Emoji codepoints (U+1F300-1FAFF,
/// U+2600-27BF, U+FE0F, U+200D) are cut out of every token first.
SeparatedTweet separate_entities(std::string_view raw);

/// Lowercases, replaces numeric literals with `<num>`, caps any character
/// repeated more than three times at three, and collapses whitespace.
std::string normalize(std::string_view clean_text);

/// Maximal runs of letters, digits and apostrophes. Runs made only of
/// apostrophes are dropped.
std::vector<std::string> tokenize(std::string_view text);

/// Splits after '.', '!' or '?' when followed by whitespace or end of text.
/// Sentences are trimmed; empty pieces are never returned.
std::vector<std::string> split_sentences(std::string_view text);

/// Vowel-group syllable count with the silent-e rule ("table" keeps its 'le').
/// Throws ValidationError on an empty word.
int count_syllables(std::string_view word);

/// True for ASCII letters and for non-ASCII codepoints outside the emoji and
/// punctuation blocks.
bool is_letter(char32_t cp) noexcept;
bool is_emoji(char32_t cp) noexcept;

/// Decodes UTF-8 leniently: invalid bytes become U+FFFD.
std::u32string decode_utf8(std::string_view text);
void append_utf8(std::string& out, char32_t cp);

std::string to_lower_ascii(std::string_view text);

/// English/non-English decision for one tweet.
class EnglishDetector {
public:
    explicit EnglishDetector(WordList common_words, double min_common_fraction = 0.2,
                             double min_ascii_fraction = 0.6);

    /// A language tag, when present, decides alone (`"en"` only).
    bool is_english(std::string_view tweet, const std::optional<std::string>& lang_tag = std::nullopt) const;

private:
    WordList common_;
    double min_common_;
    double min_ascii_;
};

}  // namespace pf
