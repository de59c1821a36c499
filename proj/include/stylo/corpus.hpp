#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stylo/errors.hpp"
#include "stylo/segment.hpp"

namespace stylo {

enum class Label { Human, AI };

inline std::string to_string(Label l) { return l == Label::Human ? "Human" : "AI"; }

inline Label parse_label(std::string_view s) {
    std::string lower;
    lower.reserve(s.size());
    for (char c : s)
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "human") return Label::Human;
    if (lower == "ai" || lower == "chatgpt") return Label::AI;
    throw ValidationError("unknown label: \"" + std::string(s) + "\"");
}

struct DocumentRecord {
    std::string doc_id;
    Label label = Label::Human;
    std::vector<std::string> paragraphs;  // ordered, each non-empty after trim
};

struct Corpus {
    std::vector<DocumentRecord> documents;
    std::string provenance;

    std::size_t paragraph_count() const {
        std::size_t n = 0;
        for (const auto& d : documents) n += d.paragraphs.size();
        return n;
    }
};

struct CorpusStats {
    std::size_t documents_human = 0;
    std::size_t documents_ai = 0;
    std::size_t paragraphs_human = 0;
    std::size_t paragraphs_ai = 0;

    std::size_t total_documents() const { return documents_human + documents_ai; }
    std::size_t total_paragraphs() const { return paragraphs_human + paragraphs_ai; }
    double ai_paragraph_share() const {
        std::size_t total = total_paragraphs();
        return total == 0 ? 0.0 : static_cast<double>(paragraphs_ai) / total;
    }
};

inline CorpusStats corpus_stats(const Corpus& corpus) {
    CorpusStats stats;
    for (const auto& doc : corpus.documents) {
        if (doc.label == Label::Human) {
            ++stats.documents_human;
            stats.paragraphs_human += doc.paragraphs.size();
        } else {
            ++stats.documents_ai;
            stats.paragraphs_ai += doc.paragraphs.size();
        }
    }
    return stats;
}

namespace detail {

// RFC 4180 style field splitting for a single record line.
inline std::vector<std::string> parse_csv_line(const std::string& line, std::size_t lineno) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
        ++i;
    }
    if (quoted)
        throw ParseError("line " + std::to_string(lineno) + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace detail

// Column names for the row-per-paragraph CSV layout. `paragraph_index` may
// be empty, in which case rows are numbered in order of appearance per doc.
struct CsvColumns {
    std::string doc_id = "doc_id";
    std::string paragraph_index = "paragraph_index";
    std::string label = "label";
    std::string text = "text";
};

inline Corpus load_row_csv(std::istream& in, const CsvColumns& cols = {}) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = detail::parse_csv_line(line, 1);

    auto find_col = [&](const std::string& name, bool required) -> int {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        if (required) throw ValidationError("missing column: " + name);
        return -1;
    };
    int c_doc = find_col(cols.doc_id, true);
    int c_idx = cols.paragraph_index.empty() ? -1 : find_col(cols.paragraph_index, false);
    int c_label = find_col(cols.label, true);
    int c_text = find_col(cols.text, true);

    struct Row {
        long index;
        std::string text;
        std::size_t lineno;
    };
    std::map<std::string, std::pair<Label, std::vector<Row>>> docs;
    std::vector<std::string> order;

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = detail::parse_csv_line(line, lineno);
        auto field = [&](int c) -> const std::string& {
            if (c < 0 || static_cast<std::size_t>(c) >= fields.size())
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": too few fields");
            return fields[static_cast<std::size_t>(c)];
        };
        const std::string& doc_id = field(c_doc);
        if (doc_id.empty())
            throw ValidationError("line " + std::to_string(lineno) + ": empty doc_id");
        Label label;
        try {
            label = parse_label(field(c_label));
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
        }
        std::string text(detail::trim(field(c_text)));
        if (text.empty())
            throw ValidationError("line " + std::to_string(lineno) + ": empty text");

        auto [it, inserted] = docs.try_emplace(doc_id, label, std::vector<Row>{});
        if (inserted) order.push_back(doc_id);
        else if (it->second.first != label)
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": conflicting label for doc " + doc_id);
        long index;
        if (c_idx >= 0) {
            try {
                index = std::stol(field(c_idx));
            } catch (const std::exception&) {
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": bad paragraph_index \"" + field(c_idx) + "\"");
            }
        } else {
            index = static_cast<long>(it->second.second.size());
        }
        for (const auto& row : it->second.second)
            if (row.index == index)
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": duplicate (doc_id, paragraph_index) = (" +
                                      doc_id + ", " + std::to_string(index) + ")");
        it->second.second.push_back({index, std::move(text), lineno});
    }
    if (order.empty()) throw ValidationError("no data rows");

    Corpus corpus;
    for (const auto& doc_id : order) {
        auto& [label, rows] = docs.at(doc_id);
        std::sort(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return a.index < b.index; });
        DocumentRecord doc;
        doc.doc_id = doc_id;
        doc.label = label;
        for (auto& row : rows) doc.paragraphs.push_back(std::move(row.text));
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

inline void save_row_csv(const Corpus& corpus, std::ostream& out) {
    out << "doc_id,paragraph_index,label,text\n";
    for (const auto& doc : corpus.documents)
        for (std::size_t i = 0; i < doc.paragraphs.size(); ++i)
            out << detail::csv_escape(doc.doc_id) << ',' << i << ','
                << to_string(doc.label) << ','
                << detail::csv_escape(doc.paragraphs[i]) << '\n';
}

inline Corpus load_doc_jsonl(std::istream& in) {
    Corpus corpus;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!j.contains("doc_id") || !j.contains("label") || !j.contains("paragraphs"))
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": need doc_id, label, paragraphs");
        DocumentRecord doc;
        doc.doc_id = j.at("doc_id").get<std::string>();
        if (!seen.insert(doc.doc_id).second)
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": duplicate doc_id " + doc.doc_id);
        doc.label = parse_label(j.at("label").get<std::string>());
        for (const auto& p : j.at("paragraphs")) {
            std::string text(detail::trim(p.get<std::string>()));
            if (text.empty())
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": empty paragraph in doc " + doc.doc_id);
            doc.paragraphs.push_back(std::move(text));
        }
        if (doc.paragraphs.empty())
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": doc " + doc.doc_id + " has no paragraphs");
        corpus.documents.push_back(std::move(doc));
    }
    if (corpus.documents.empty()) throw ValidationError("no documents");
    return corpus;
}

inline void save_doc_jsonl(const Corpus& corpus, std::ostream& out) {
    for (const auto& doc : corpus.documents) {
        nlohmann::json j;
        j["doc_id"] = doc.doc_id;
        j["label"] = to_string(doc.label);
        j["paragraphs"] = doc.paragraphs;
        out << j.dump() << '\n';
    }
}

enum class CorpusFormat { RowCsv, DocJsonl };

inline Corpus load_corpus(const std::string& path, CorpusFormat format,
                          const CsvColumns& cols = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Corpus corpus = format == CorpusFormat::RowCsv ? load_row_csv(in, cols)
                                                   : load_doc_jsonl(in);
    corpus.provenance = path;
    return corpus;
}

}  // namespace stylo
