#include "pf/textproc.hpp"

#include <algorithm>
#include <fstream>

#include "pf/error.hpp"

namespace pf {

WordList::WordList(std::vector<std::string> words) {
    for (auto& w : words) {
        if (!w.empty()) words_.insert(std::move(w));
    }
}

WordList WordList::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read word list " + path.string());
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        words.push_back(to_lower_ascii(std::string_view(line).substr(first, last - first + 1)));
    }
    return WordList(std::move(words));
}

bool WordList::contains(std::string_view word) const { return words_.find(word) != words_.end(); }

std::u32string decode_utf8(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const auto b0 = static_cast<unsigned char>(text[i]);
        int len = 0;
        char32_t cp = 0;
        if (b0 < 0x80) {
            len = 1;
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        }
        bool ok = len > 0 && i + len <= text.size();
        for (int k = 1; ok && k < len; ++k) {
            const auto b = static_cast<unsigned char>(text[i + k]);
            if ((b & 0xC0) != 0x80) {
                ok = false;
            } else {
                cp = (cp << 6) | (b & 0x3F);
            }
        }
        if (!ok) {
            out.push_back(0xFFFD);
            ++i;
        } else {
            out.push_back(cp);
            i += len;
        }
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string to_lower_ascii(std::string_view text) {
    std::string out(text);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

bool is_emoji(char32_t cp) noexcept {
    return (cp >= 0x1F300 && cp <= 0x1FAFF) || (cp >= 0x2600 && cp <= 0x27BF) || cp == 0xFE0F ||
           cp == 0x200D;
}

bool is_letter(char32_t cp) noexcept {
    if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    if (is_emoji(cp)) return false;
    if (cp <= 0xBF || cp == 0xD7 || cp == 0xF7) return false;
    if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols, arrows, shapes
    if (cp >= 0x3000 && cp <= 0x303F) return false;
    if (cp >= 0xFE00 && cp <= 0xFE0F) return false;
    if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
    if (cp == 0xFFFD) return false;
    return true;
}

namespace {

bool is_space(char32_t cp) { return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v'; }
bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }
bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }
bool is_word_char(char32_t cp) { return is_letter(cp) || is_digit(cp) || cp == '_'; }

std::string encode(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

bool starts_with_ci(std::u32string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        char32_t c = s[i];
        if (c >= 'A' && c <= 'Z') c = c - 'A' + 'a';
        if (c != static_cast<char32_t>(prefix[i])) return false;
    }
    return true;
}

void classify_piece(std::u32string_view piece, SeparatedTweet& out, std::vector<std::string>& clean) {
    while (!piece.empty()) {
        if (starts_with_ci(piece, "http://") || starts_with_ci(piece, "https://") ||
            starts_with_ci(piece, "www.")) {
            out.urls.push_back(encode(piece));
            return;
        }
        const char32_t sigil = piece[0];
        if ((sigil == '#' || sigil == '@') && piece.size() > 1 && is_word_char(piece[1])) {
            std::size_t end = 1;
            while (end < piece.size() && is_word_char(piece[end])) ++end;
            std::string name = encode(piece.substr(1, end - 1));
            if (sigil == '#') {
                out.hashtags.push_back(to_lower_ascii(name));
            } else {
                out.mentions.push_back(std::move(name));
            }
            piece.remove_prefix(end);
            continue;
        }
        clean.push_back(encode(piece));
        return;
    }
}

}  // namespace

SeparatedTweet separate_entities(std::string_view raw) {
    SeparatedTweet out;
    std::vector<std::string> clean;
    const std::u32string cps = decode_utf8(raw);
    const std::u32string_view text(cps);

    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t end = i;
        while (end < text.size() && !is_space(text[end])) ++end;
        std::u32string_view token = text.substr(i, end - i);
        i = end;

        std::size_t p = 0;
        while (p < token.size()) {
            std::size_t q = p;
            if (is_emoji(token[p])) {
                while (q < token.size() && is_emoji(token[q])) ++q;
                out.emojis.push_back(encode(token.substr(p, q - p)));
            } else {
                while (q < token.size() && !is_emoji(token[q])) ++q;
                classify_piece(token.substr(p, q - p), out, clean);
            }
            p = q;
        }
    }

    for (std::size_t k = 0; k < clean.size(); ++k) {
        if (k) out.clean_text.push_back(' ');
        out.clean_text += clean[k];
    }
    return out;
}

std::string normalize(std::string_view clean_text) {
    std::u32string cps = decode_utf8(clean_text);
    for (auto& c : cps) {
        if (c >= 'A' && c <= 'Z') c = c - 'A' + 'a';
    }

    // Numeric literals: digit+ ([.,:] digit+)*, not touching a letter or digit.
    std::u32string numbered;
    numbered.reserve(cps.size());
    const std::u32string placeholder = U"<num>";
    auto alnum = [](char32_t c) { return is_letter(c) || is_digit(c); };
    std::size_t i = 0;
    while (i < cps.size()) {
        if (is_digit(cps[i]) && (i == 0 || !alnum(cps[i - 1]))) {
            std::size_t end = i;
            while (end < cps.size() && is_digit(cps[end])) ++end;
            while (end + 1 < cps.size() && (cps[end] == '.' || cps[end] == ',' || cps[end] == ':') &&
                   is_digit(cps[end + 1])) {
                ++end;
                while (end < cps.size() && is_digit(cps[end])) ++end;
            }
            if (end == cps.size() || !alnum(cps[end])) {
                numbered += placeholder;
                i = end;
                continue;
            }
            numbered.append(cps, i, end - i);
            i = end;
            continue;
        }
        numbered.push_back(cps[i]);
        ++i;
    }

    std::string out;
    out.reserve(numbered.size());
    char32_t prev = 0;
    int run = 0;
    bool pending_space = false;
    for (char32_t c : numbered) {
        if (is_space(c)) {
            pending_space = !out.empty();
            prev = 0;
            run = 0;
            continue;
        }
        run = (c == prev) ? run + 1 : 1;
        prev = c;
        if (run > 3) continue;
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        append_utf8(out, c);
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    const std::u32string cps = decode_utf8(text);
    std::size_t i = 0;
    while (i < cps.size()) {
        auto member = [](char32_t c) { return is_letter(c) || is_digit(c) || is_apostrophe(c); };
        if (!member(cps[i])) {
            ++i;
            continue;
        }
        std::size_t end = i;
        bool substantive = false;
        while (end < cps.size() && member(cps[end])) {
            substantive = substantive || !is_apostrophe(cps[end]);
            ++end;
        }
        if (substantive) tokens.push_back(encode(std::u32string_view(cps).substr(i, end - i)));
        i = end;
    }
    return tokens;
}

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    auto push = [&](std::size_t from, std::size_t to) {
        std::string_view piece = text.substr(from, to - from);
        auto first = piece.find_first_not_of(" \t\n\r\f\v");
        if (first == std::string_view::npos) return;
        auto last = piece.find_last_not_of(" \t\n\r\f\v");
        sentences.emplace_back(piece.substr(first, last - first + 1));
    };
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        const bool at_end = i + 1 == text.size();
        if (at_end || std::string_view(" \t\n\r\f\v").find(text[i + 1]) != std::string_view::npos) {
            push(start, i + 1);
            start = i + 1;
        }
    }
    if (start < text.size()) push(start, text.size());
    return sentences;
}

int count_syllables(std::string_view word) {
    if (word.empty()) throw ValidationError("count_syllables: empty word");
    const std::string w = to_lower_ascii(word);
    auto vowel = [](char c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };
    int groups = 0;
    bool in_group = false;
    for (char c : w) {
        if (vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    if (w.size() >= 2 && w.back() == 'e' && w[w.size() - 2] != 'l') --groups;
    return std::max(groups, 1);
}

EnglishDetector::EnglishDetector(WordList common_words, double min_common_fraction, double min_ascii_fraction)
    : common_(std::move(common_words)), min_common_(min_common_fraction), min_ascii_(min_ascii_fraction) {}

bool EnglishDetector::is_english(std::string_view tweet, const std::optional<std::string>& lang_tag) const {
    if (lang_tag) return *lang_tag == "en";

    std::size_t letters = 0;
    std::size_t ascii_letters = 0;
    for (char32_t cp : decode_utf8(tweet)) {
        if (!is_letter(cp)) continue;
        ++letters;
        if (cp < 0x80) ++ascii_letters;
    }
    if (letters == 0) return false;

    const auto tokens = tokenize(to_lower_ascii(tweet));
    if (tokens.empty()) return false;
    const auto common = std::count_if(tokens.begin(), tokens.end(),
                                      [&](const std::string& t) { return common_.contains(t); });
    const double common_fraction = static_cast<double>(common) / static_cast<double>(tokens.size());
    const double ascii_fraction = static_cast<double>(ascii_letters) / static_cast<double>(letters);
    return common_fraction >= min_common_ && ascii_fraction >= min_ascii_;
}

}  // namespace pf
