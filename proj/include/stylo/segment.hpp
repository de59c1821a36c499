#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/errors.hpp"

namespace stylo {

struct Sentence {
    std::string text;
    std::size_t word_count = 0;
};

struct WordToken {
    std::string raw;
    std::string normalized;  // lowercased, leading/trailing non-alphanumeric stripped
};

namespace detail {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
inline bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
inline bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

inline std::size_t count_words(std::string_view s) {
    std::size_t n = 0;
    bool in_word = false;
    for (char c : s) {
        if (is_space(c)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++n;
        }
    }
    return n;
}

// True if `s` starts with a character that may open a sentence: uppercase
// letter, digit, or an opening quote/parenthesis (ASCII or typographic).
inline bool opens_sentence(std::string_view s) {
    if (s.empty()) return false;
    char c = s.front();
    if (is_upper(c) || is_digit(c)) return true;
    if (c == '"' || c == '\'' || c == '(' || c == '[') return true;
    // U+201C left double quote, U+2018 left single quote
    if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xE2 &&
        static_cast<unsigned char>(s[1]) == 0x80) {
        unsigned char b = static_cast<unsigned char>(s[2]);
        return b == 0x9C || b == 0x98;
    }
    return false;
}

}  // namespace detail

// Terminators completing one of these entries never end a sentence.
inline const std::vector<std::string>& default_abbreviations() {
    static const std::vector<std::string> list = {
        "al.", "e.g.", "i.e.", "Fig.", "Figs.", "Dr.",
        "Prof.", "vs.", "cf.", "No.", "St.",
    };
    return list;
}

// Splits raw text on newlines; blank and whitespace-only lines are dropped
// and each paragraph is returned trimmed, in order.
inline std::vector<std::string> split_paragraphs(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = detail::trim(text.substr(start, end - start));
        if (!line.empty()) out.emplace_back(line);
        start = end + 1;
    }
    return out;
}

inline std::vector<WordToken> tokenize_words(std::string_view text) {
    std::vector<WordToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && detail::is_space(text[i])) ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !detail::is_space(text[j])) ++j;
        WordToken tok;
        tok.raw = std::string(text.substr(i, j - i));
        std::string_view v = tok.raw;
        while (!v.empty() && !detail::is_alnum(v.front())) v.remove_prefix(1);
        while (!v.empty() && !detail::is_alnum(v.back())) v.remove_suffix(1);
        tok.normalized.reserve(v.size());
        for (char c : v)
            tok.normalized.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        out.push_back(std::move(tok));
        i = j;
    }
    return out;
}

namespace detail {

// The whitespace-delimited token ending at position `pos` (inclusive),
// with leading punctuation stripped, e.g. "(Fig." -> "Fig.".
inline std::string_view token_ending_at(std::string_view text, std::size_t pos) {
    std::size_t begin = pos;
    while (begin > 0 && !is_space(text[begin - 1])) --begin;
    std::string_view tok = text.substr(begin, pos - begin + 1);
    while (!tok.empty() && !is_alnum(tok.front())) tok.remove_prefix(1);
    return tok;
}

inline bool is_protected_period(std::string_view text, std::size_t pos,
                                const std::vector<std::string>& abbreviations) {
    // Decimal point: a digit on both sides.
    if (pos > 0 && pos + 1 < text.size() && is_digit(text[pos - 1]) &&
        is_digit(text[pos + 1]))
        return true;
    std::string_view tok = token_ending_at(text, pos);
    if (tok.size() == 2 && is_alnum(tok[0]) && !is_digit(tok[0]))
        return true;  // single-letter initial, "J."
    for (const auto& abbr : abbreviations)
        if (tok == abbr) return true;
    return false;
}

}  // namespace detail

// Rule-based sentence segmentation. A '.', '?' or '!' ends a sentence iff it
// is at paragraph end, or is followed by whitespace and then a character that
// may open a sentence -- unless the '.' completes a protected abbreviation,
// a single-letter initial, or a decimal number. Trailing text without a
// terminator forms the final sentence.
inline std::vector<Sentence> split_sentences(
    std::string_view paragraph,
    const std::vector<std::string>& abbreviations = default_abbreviations()) {
    std::string_view text = detail::trim(paragraph);
    if (text.empty()) throw EmptyParagraph();

    std::vector<Sentence> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '?' && c != '!') continue;
        bool end;
        if (i + 1 == text.size()) {
            end = true;
        } else if (detail::is_space(text[i + 1])) {
            std::size_t j = i + 1;
            while (j < text.size() && detail::is_space(text[j])) ++j;
            end = j < text.size() && detail::opens_sentence(text.substr(j));
            if (end && c == '.' && detail::is_protected_period(text, i, abbreviations))
                end = false;
        } else {
            end = false;
        }
        if (!end) continue;
        std::string_view body = detail::trim(text.substr(start, i - start + 1));
        out.push_back({std::string(body), detail::count_words(body)});
        start = i + 1;
    }
    std::string_view rest = detail::trim(text.substr(start));
    if (!rest.empty()) out.push_back({std::string(rest), detail::count_words(rest)});
    return out;
}

}  // namespace stylo
