#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stylo/corpus.hpp"
#include "stylo/errors.hpp"
#include "stylo/gbt.hpp"  // detail::Rng

namespace stylo {

// Generation knobs for one class. Sentence lengths are drawn from a
// short/long/mid mixture; all cue probabilities are per sentence.
struct ClassProfile {
    int min_paragraphs = 1, max_paragraphs = 1;
    int min_sentences = 1, max_sentences = 1;
    double short_prob = 0.0, long_prob = 0.0;
    int short_min = 5, short_max = 9;
    int long_min = 35, long_max = 44;
    int mid_min = 12, mid_max = 24;
    double p_paren = 0, p_dash = 0, p_semicolon_or_colon = 0, p_question = 0,
           p_apostrophe = 0;
    double p_although = 0, p_however = 0, p_but = 0, p_because = 0, p_this = 0,
           p_others = 0, p_digit = 0, p_proper_noun = 0, p_et = 0;
};

struct SynthProfile {
    ClassProfile human;
    ClassProfile ai;
    std::uint64_t rng_seed = 0;
};

// Defaults encode the class separations of the detector's feature set:
// the Human class gets more sentences, wider length mixtures, and more of
// every Human-direction cue; the AI class dominates only the apostrophe
// and others/researchers cues.
inline SynthProfile default_profile(std::uint64_t seed = 0) {
    SynthProfile p;
    p.rng_seed = seed;

    p.human.min_paragraphs = 5;
    p.human.max_paragraphs = 9;
    p.human.min_sentences = 4;
    p.human.max_sentences = 8;
    p.human.short_prob = 0.35;
    p.human.long_prob = 0.30;
    p.human.mid_min = 12;
    p.human.mid_max = 28;
    p.human.p_paren = 0.30;
    p.human.p_dash = 0.25;
    p.human.p_semicolon_or_colon = 0.30;
    p.human.p_question = 0.15;
    p.human.p_apostrophe = 0.05;
    p.human.p_although = 0.12;
    p.human.p_however = 0.15;
    p.human.p_but = 0.20;
    p.human.p_because = 0.15;
    p.human.p_this = 0.25;
    p.human.p_others = 0.03;
    p.human.p_digit = 0.25;
    p.human.p_proper_noun = 0.50;
    p.human.p_et = 0.12;

    p.ai.min_paragraphs = 3;
    p.ai.max_paragraphs = 5;
    p.ai.min_sentences = 2;
    p.ai.max_sentences = 4;
    p.ai.short_prob = 0.02;
    p.ai.long_prob = 0.02;
    p.ai.mid_min = 14;
    p.ai.mid_max = 22;
    p.ai.p_paren = 0.04;
    p.ai.p_dash = 0.02;
    p.ai.p_semicolon_or_colon = 0.05;
    p.ai.p_question = 0.02;
    p.ai.p_apostrophe = 0.30;
    p.ai.p_although = 0.02;
    p.ai.p_however = 0.03;
    p.ai.p_but = 0.04;
    p.ai.p_because = 0.03;
    p.ai.p_this = 0.06;
    p.ai.p_others = 0.35;
    p.ai.p_digit = 0.05;
    p.ai.p_proper_noun = 0.04;
    p.ai.p_et = 0.01;
    return p;
}

namespace detail {

inline void validate_class(const ClassProfile& c, const char* which) {
    auto bad_range = [](int lo, int hi) { return lo < 1 || hi < lo; };
    if (bad_range(c.min_paragraphs, c.max_paragraphs) ||
        bad_range(c.min_sentences, c.max_sentences) ||
        bad_range(c.short_min, c.short_max) || bad_range(c.long_min, c.long_max) ||
        bad_range(c.mid_min, c.mid_max))
        throw InvalidProfile(std::string(which) + ": empty or invalid range");
    for (double p : {c.short_prob, c.long_prob, c.p_paren, c.p_dash,
                     c.p_semicolon_or_colon, c.p_question, c.p_apostrophe,
                     c.p_although, c.p_however, c.p_but, c.p_because, c.p_this,
                     c.p_others, c.p_digit, c.p_proper_noun, c.p_et})
        if (p < 0.0 || p > 1.0)
            throw InvalidProfile(std::string(which) + ": probability outside [0,1]");
    if (c.short_prob + c.long_prob > 1.0)
        throw InvalidProfile(std::string(which) + ": mixture weights exceed 1");
}

// Filler vocabulary; deliberately avoids every cue word, digits, and capitals.
inline const std::vector<std::string>& word_pool() {
    static const std::vector<std::string> pool = {
        "the",    "model",  "data",   "method", "sample", "result", "study",
        "value",  "signal", "trend",  "group",  "effect", "field",  "case",
        "level",  "form",   "change", "point",  "part",   "time",   "work",
        "line",   "term",   "basis",  "factor", "range",  "scale",  "series",
        "stage",  "state",  "system", "theory", "unit",   "phase",  "measure",
        "shows",  "gives",  "holds",  "varies", "grows",  "under",  "across",
        "within", "between"};
    return pool;
}

inline const std::vector<std::string>& proper_nouns() {
    static const std::vector<std::string> pool = {"Smith", "NASA", "Chen", "IBM",
                                                  "Jones", "Kansas"};
    return pool;
}

class SentenceBuilder {
public:
    SentenceBuilder(const ClassProfile& profile, Rng& rng)
        : profile_(profile), rng_(rng) {}

    std::string build() {
        int n = draw_length();
        tokens_.clear();
        used_.assign(static_cast<std::size_t>(n), false);
        const auto& pool = word_pool();
        for (int i = 0; i < n; ++i)
            tokens_.push_back(pool[rng_.below(pool.size())]);
        // position 0 stays a plain capitalized word; the last stays plain so
        // the appended terminator is unambiguous
        used_[0] = true;
        used_.back() = true;

        maybe_word(profile_.p_although, "although");
        maybe_word(profile_.p_however, "however,");
        maybe_word(profile_.p_but, "but");
        maybe_word(profile_.p_because, "because");
        maybe_word(profile_.p_this, "this");
        if (rng_.uniform() < profile_.p_others)
            substitute(rng_.below(2) == 0 ? "others" : "researchers");
        if (rng_.uniform() < profile_.p_digit)
            substitute(std::to_string(1990 + rng_.below(40)));
        if (rng_.uniform() < profile_.p_apostrophe)
            substitute(rng_.below(2) == 0 ? "it's" : "team's");
        if (rng_.uniform() < profile_.p_proper_noun) {
            const auto& names = proper_nouns();
            substitute(names[rng_.below(names.size())]);
        }
        if (rng_.uniform() < profile_.p_et) substitute_pair("et", "al.");
        if (rng_.uniform() < profile_.p_paren) wrap_paren();
        if (rng_.uniform() < profile_.p_dash) substitute("-");
        if (rng_.uniform() < profile_.p_semicolon_or_colon)
            append_mark(rng_.below(2) == 0 ? ';' : ':');

        tokens_[0][0] = static_cast<char>(
            std::toupper(static_cast<unsigned char>(tokens_[0][0])));
        bool question = rng_.uniform() < profile_.p_question;
        std::string out;
        for (std::size_t i = 0; i < tokens_.size(); ++i) {
            if (i) out.push_back(' ');
            out += tokens_[i];
        }
        out.push_back(question ? '?' : '.');
        return out;
    }

private:
    int draw_length() {
        double r = rng_.uniform();
        int lo, hi;
        if (r < profile_.short_prob) {
            lo = profile_.short_min;
            hi = profile_.short_max;
        } else if (r < profile_.short_prob + profile_.long_prob) {
            lo = profile_.long_min;
            hi = profile_.long_max;
        } else {
            lo = profile_.mid_min;
            hi = profile_.mid_max;
        }
        return lo + static_cast<int>(rng_.below(static_cast<std::size_t>(hi - lo + 1)));
    }

    // A random unused interior position, or -1 when none remain.
    int free_position() {
        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < used_.size(); ++i)
            if (!used_[i]) open.push_back(i);
        if (open.empty()) return -1;
        return static_cast<int>(open[rng_.below(open.size())]);
    }

    void maybe_word(double p, const char* word) {
        if (rng_.uniform() < p) substitute(word);
    }

    void substitute(const std::string& word) {
        int pos = free_position();
        if (pos < 0) return;
        tokens_[static_cast<std::size_t>(pos)] = word;
        used_[static_cast<std::size_t>(pos)] = true;
    }

    void substitute_pair(const char* first, const char* second) {
        for (std::size_t i = 0; i + 1 < used_.size(); ++i) {
            if (used_[i] || used_[i + 1]) continue;
            tokens_[i] = first;
            tokens_[i + 1] = second;
            used_[i] = used_[i + 1] = true;
            return;
        }
    }

    void wrap_paren() {
        int pos = free_position();
        if (pos < 0) return;
        auto& tok = tokens_[static_cast<std::size_t>(pos)];
        tok = "(" + tok + ")";
        used_[static_cast<std::size_t>(pos)] = true;
    }

    void append_mark(char mark) {
        int pos = free_position();
        if (pos < 0) return;
        tokens_[static_cast<std::size_t>(pos)].push_back(mark);
        used_[static_cast<std::size_t>(pos)] = true;
    }

    const ClassProfile& profile_;
    Rng& rng_;
    std::vector<std::string> tokens_;
    std::vector<bool> used_;
};

inline DocumentRecord generate_document(const ClassProfile& profile, Label label,
                                        std::string doc_id, Rng& rng) {
    DocumentRecord doc;
    doc.doc_id = std::move(doc_id);
    doc.label = label;
    int n_paragraphs =
        profile.min_paragraphs +
        static_cast<int>(rng.below(static_cast<std::size_t>(
            profile.max_paragraphs - profile.min_paragraphs + 1)));
    SentenceBuilder builder(profile, rng);
    for (int p = 0; p < n_paragraphs; ++p) {
        int n_sentences =
            profile.min_sentences +
            static_cast<int>(rng.below(static_cast<std::size_t>(
                profile.max_sentences - profile.min_sentences + 1)));
        std::string paragraph;
        for (int s = 0; s < n_sentences; ++s) {
            if (s) paragraph.push_back(' ');
            paragraph += builder.build();
        }
        doc.paragraphs.push_back(std::move(paragraph));
    }
    return doc;
}

}  // namespace detail

inline Corpus generate_synthetic(const SynthProfile& profile, std::size_t n_human,
                                 std::size_t n_ai) {
    if (n_human < 1 || n_ai < 1)
        throw InvalidProfile("document counts must be at least 1");
    detail::validate_class(profile.human, "human");
    detail::validate_class(profile.ai, "ai");

    detail::Rng rng(profile.rng_seed);
    Corpus corpus;
    corpus.provenance = "synthetic, seed " + std::to_string(profile.rng_seed);
    char buf[32];
    for (std::size_t i = 0; i < n_human; ++i) {
        std::snprintf(buf, sizeof buf, "human_%04zu", i);
        corpus.documents.push_back(
            detail::generate_document(profile.human, Label::Human, buf, rng));
    }
    for (std::size_t i = 0; i < n_ai; ++i) {
        std::snprintf(buf, sizeof buf, "ai_%04zu", i);
        corpus.documents.push_back(
            detail::generate_document(profile.ai, Label::AI, buf, rng));
    }
    return corpus;
}

namespace detail {

inline void class_from_json(const nlohmann::json& j, ClassProfile& c) {
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("min_paragraphs", c.min_paragraphs);
    get("max_paragraphs", c.max_paragraphs);
    get("min_sentences", c.min_sentences);
    get("max_sentences", c.max_sentences);
    get("short_prob", c.short_prob);
    get("long_prob", c.long_prob);
    get("short_min", c.short_min);
    get("short_max", c.short_max);
    get("long_min", c.long_min);
    get("long_max", c.long_max);
    get("mid_min", c.mid_min);
    get("mid_max", c.mid_max);
    get("p_paren", c.p_paren);
    get("p_dash", c.p_dash);
    get("p_semicolon_or_colon", c.p_semicolon_or_colon);
    get("p_question", c.p_question);
    get("p_apostrophe", c.p_apostrophe);
    get("p_although", c.p_although);
    get("p_however", c.p_however);
    get("p_but", c.p_but);
    get("p_because", c.p_because);
    get("p_this", c.p_this);
    get("p_others", c.p_others);
    get("p_digit", c.p_digit);
    get("p_proper_noun", c.p_proper_noun);
    get("p_et", c.p_et);
}

}  // namespace detail

// Profile file: JSON with optional "human" / "ai" objects overriding the
// default profile fields, plus optional "rng_seed".
inline SynthProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("profile parse failure: " + std::string(e.what()));
    }
    SynthProfile profile = default_profile();
    if (j.contains("rng_seed")) profile.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    if (j.contains("human")) detail::class_from_json(j.at("human"), profile.human);
    if (j.contains("ai")) detail::class_from_json(j.at("ai"), profile.ai);
    detail::validate_class(profile.human, "human");
    detail::validate_class(profile.ai, "ai");
    return profile;
}

}  // namespace stylo
