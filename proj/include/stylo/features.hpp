#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/errors.hpp"
#include "stylo/segment.hpp"

namespace stylo {

constexpr std::size_t kFeatureCount = 20;

// One paragraph's feature values, in fixed serialization order f1..f20.
struct FeatureVector {
    double f1_sentences_per_paragraph = 0;
    double f2_words_per_paragraph = 0;
    double f3_paren = 0;
    double f4_dash = 0;
    double f5_semicolon_or_colon = 0;
    double f6_question = 0;
    double f7_apostrophe = 0;
    double f8_sentence_len_stddev = 0;
    double f9_median_consecutive_diff = 0;
    double f10_has_short_sentence = 0;
    double f11_has_long_sentence = 0;
    double f12_although = 0;
    double f13_however = 0;
    double f14_but = 0;
    double f15_because = 0;
    double f16_this = 0;
    double f17_others_or_researchers = 0;
    double f18_contains_digit = 0;
    double f19_capitals_vs_periods = 0;
    double f20_et = 0;

    std::array<double, kFeatureCount> as_array() const {
        return {f1_sentences_per_paragraph,
                f2_words_per_paragraph,
                f3_paren,
                f4_dash,
                f5_semicolon_or_colon,
                f6_question,
                f7_apostrophe,
                f8_sentence_len_stddev,
                f9_median_consecutive_diff,
                f10_has_short_sentence,
                f11_has_long_sentence,
                f12_although,
                f13_however,
                f14_but,
                f15_because,
                f16_this,
                f17_others_or_researchers,
                f18_contains_digit,
                f19_capitals_vs_periods,
                f20_et};
    }
};

using FeatureRow = std::array<double, kFeatureCount>;
using FeatureMatrix = std::vector<FeatureRow>;

enum class FeatureCategory {
    ParagraphComplexity,
    Punctuation,
    SentenceLengthDiversity,
    PopularWords,
};

enum class FeatureDirection { Human, ChatGPT };

struct FeatureInfo {
    int index;  // 1-based
    std::string_view name;
    FeatureCategory category;
    FeatureDirection expected_direction;
};

inline const std::array<FeatureInfo, kFeatureCount>& feature_catalog() {
    using C = FeatureCategory;
    using D = FeatureDirection;
    static const std::array<FeatureInfo, kFeatureCount> catalog = {{
        {1, "sentences_per_paragraph", C::ParagraphComplexity, D::Human},
        {2, "words_per_paragraph", C::ParagraphComplexity, D::Human},
        {3, "paren_present", C::Punctuation, D::Human},
        {4, "dash_present", C::Punctuation, D::Human},
        {5, "semicolon_or_colon_present", C::Punctuation, D::Human},
        {6, "question_mark_present", C::Punctuation, D::Human},
        {7, "apostrophe_present", C::Punctuation, D::ChatGPT},
        {8, "sentence_len_stddev", C::SentenceLengthDiversity, D::Human},
        {9, "median_consecutive_diff", C::SentenceLengthDiversity, D::Human},
        {10, "has_short_sentence", C::SentenceLengthDiversity, D::Human},
        {11, "has_long_sentence", C::SentenceLengthDiversity, D::Human},
        {12, "contains_although", C::PopularWords, D::Human},
        {13, "contains_however", C::PopularWords, D::Human},
        {14, "contains_but", C::PopularWords, D::Human},
        {15, "contains_because", C::PopularWords, D::Human},
        {16, "contains_this", C::PopularWords, D::Human},
        {17, "contains_others_or_researchers", C::PopularWords, D::ChatGPT},
        {18, "contains_digit", C::PopularWords, D::Human},
        {19, "capitals_vs_periods", C::PopularWords, D::Human},
        {20, "contains_et", C::PopularWords, D::Human},
    }};
    return catalog;
}

inline std::vector<std::string> feature_names() {
    std::vector<std::string> names;
    names.reserve(kFeatureCount);
    for (const auto& info : feature_catalog()) names.emplace_back(info.name);
    return names;
}

namespace detail {

// Sample standard deviation (n-1 denominator); 0 for fewer than two values.
inline double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

inline double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::size_t n = xs.size();
    if (n % 2 == 1) return xs[n / 2];
    return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

inline bool has_utf8_seq(std::string_view s, unsigned char b2) {
    for (std::size_t i = 0; i + 2 < s.size(); ++i)
        if (static_cast<unsigned char>(s[i]) == 0xE2 &&
            static_cast<unsigned char>(s[i + 1]) == 0x80 &&
            static_cast<unsigned char>(s[i + 2]) == b2)
            return true;
    return false;
}

inline bool has_dash(std::string_view s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '-' && i > 0 && i + 1 < s.size() && is_space(s[i - 1]) &&
            is_space(s[i + 1]))
            return true;
    return has_utf8_seq(s, 0x93) || has_utf8_seq(s, 0x94);  // en / em dash
}

}  // namespace detail

inline FeatureVector extract_features(std::string_view paragraph) {
    std::string_view text = detail::trim(paragraph);
    if (text.empty()) throw EmptyParagraph();

    const auto sentences = split_sentences(text);
    const auto tokens = tokenize_words(text);

    FeatureVector fv;
    fv.f1_sentences_per_paragraph = static_cast<double>(sentences.size());
    fv.f2_words_per_paragraph = static_cast<double>(tokens.size());

    fv.f3_paren = text.find(')') != std::string_view::npos;
    fv.f4_dash = detail::has_dash(text);
    fv.f5_semicolon_or_colon = text.find(';') != std::string_view::npos ||
                               text.find(':') != std::string_view::npos;
    fv.f6_question = text.find('?') != std::string_view::npos;
    fv.f7_apostrophe = text.find('\'') != std::string_view::npos ||
                       detail::has_utf8_seq(text, 0x99);  // U+2019

    std::vector<double> lengths;
    lengths.reserve(sentences.size());
    for (const auto& s : sentences) lengths.push_back(static_cast<double>(s.word_count));
    fv.f8_sentence_len_stddev = detail::sample_stddev(lengths);
    if (lengths.size() >= 2) {
        std::vector<double> diffs;
        diffs.reserve(lengths.size() - 1);
        for (std::size_t i = 0; i + 1 < lengths.size(); ++i)
            diffs.push_back(std::fabs(lengths[i] - lengths[i + 1]));
        fv.f9_median_consecutive_diff = detail::median(std::move(diffs));
    }
    for (const auto& s : sentences) {
        if (s.word_count <= 10) fv.f10_has_short_sentence = 1;
        if (s.word_count >= 35) fv.f11_has_long_sentence = 1;
    }

    for (const auto& tok : tokens) {
        const std::string& w = tok.normalized;
        if (w == "although") fv.f12_although = 1;
        else if (w == "however") fv.f13_however = 1;
        else if (w == "but") fv.f14_but = 1;
        else if (w == "because") fv.f15_because = 1;
        else if (w == "this") fv.f16_this = 1;
        else if (w == "others" || w == "researchers") fv.f17_others_or_researchers = 1;
        else if (w == "et") fv.f20_et = 1;
    }

    std::size_t capitals = 0, periods = 0;
    for (char c : text) {
        if (detail::is_upper(c)) ++capitals;
        if (c == '.') ++periods;
        if (detail::is_digit(c)) fv.f18_contains_digit = 1;
    }
    fv.f19_capitals_vs_periods = capitals > 2 * periods;

    return fv;
}

inline FeatureMatrix extract_matrix(const std::vector<std::string>& paragraphs) {
    FeatureMatrix matrix;
    matrix.reserve(paragraphs.size());
    for (std::size_t i = 0; i < paragraphs.size(); ++i) {
        try {
            matrix.push_back(extract_features(paragraphs[i]).as_array());
        } catch (const EmptyParagraph&) {
            throw EmptyParagraph("row " + std::to_string(i) +
                                 ": paragraph is empty or whitespace-only");
        }
    }
    return matrix;
}

// Sample standard deviation of per-paragraph word counts over one document.
inline double doc_dispersion(const std::vector<std::string>& paragraphs) {
    if (paragraphs.empty()) throw EmptyDocument();
    std::vector<double> counts;
    counts.reserve(paragraphs.size());
    for (const auto& p : paragraphs)
        counts.push_back(static_cast<double>(detail::count_words(p)));
    return detail::sample_stddev(counts);
}

}  // namespace stylo
