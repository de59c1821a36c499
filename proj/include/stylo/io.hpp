#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stylo/corpus.hpp"
#include "stylo/errors.hpp"
#include "stylo/eval.hpp"
#include "stylo/features.hpp"

namespace stylo {

// Write via a temp file in the same directory, then rename into place.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw Error("write failure on " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace detail {

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace detail

inline std::string feature_matrix_csv(const Corpus& corpus) {
    std::ostringstream out;
    out << "doc_id,paragraph_index,label";
    for (const auto& name : feature_names()) out << ',' << name;
    out << '\n';
    for (const auto& doc : corpus.documents) {
        for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
            FeatureRow row;
            try {
                row = extract_features(doc.paragraphs[p]).as_array();
            } catch (const EmptyParagraph&) {
                throw ValidationError("doc " + doc.doc_id + " paragraph " +
                                      std::to_string(p) + " is empty");
            }
            out << detail::csv_escape(doc.doc_id) << ',' << p << ','
                << to_string(doc.label);
            for (double v : row) out << ',' << detail::format_number(v);
            out << '\n';
        }
    }
    return out.str();
}

inline std::string predictions_csv(const std::vector<PredictionRecord>& records) {
    std::ostringstream out;
    out << "doc_id,paragraph_index,true_label,predicted_label,score\n";
    for (const auto& rec : records)
        out << detail::csv_escape(rec.doc_id) << ',' << rec.paragraph_index << ','
            << to_string(rec.true_label) << ',' << to_string(rec.predicted_label)
            << ',' << detail::format_number(rec.score) << '\n';
    return out.str();
}

inline std::vector<PredictionRecord> load_predictions_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file: " + path);
    std::vector<PredictionRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = detail::parse_csv_line(line, lineno);
        if (fields.size() < 5)
            throw ValidationError("line " + std::to_string(lineno) + ": too few fields");
        PredictionRecord rec;
        rec.doc_id = fields[0];
        try {
            rec.paragraph_index = static_cast<std::size_t>(std::stoul(fields[1]));
            rec.score = std::stod(fields[4]);
        } catch (const std::exception&) {
            throw ValidationError("line " + std::to_string(lineno) + ": bad number");
        }
        rec.true_label = parse_label(fields[2]);
        rec.predicted_label = parse_label(fields[3]);
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw ValidationError("no prediction rows in " + path);
    return records;
}

}  // namespace stylo
