#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stylo/corpus.hpp"
#include "stylo/errors.hpp"
#include "stylo/features.hpp"
#include "stylo/gbt.hpp"

namespace stylo {

struct PredictionRecord {
    std::string doc_id;
    std::size_t paragraph_index = 0;  // 0-based, document order
    Label true_label = Label::Human;
    Label predicted_label = Label::Human;
    double score = 0.5;  // P(AI)
};

struct EvaluationReport {
    std::size_t n_paragraphs = 0;
    double paragraph_accuracy = 0.0;
    double auc = 0.0;
    std::size_t n_documents = 0;
    double document_accuracy = 0.0;
    double first_paragraph_accuracy = 0.0;
    // confusion[true][predicted], index 0 = Human, 1 = AI
    std::array<std::array<std::size_t, 2>, 2> confusion{{{0, 0}, {0, 0}}};
};

// Mann-Whitney AUC with midrank tie handling; equals trapezoidal ROC area.
inline double auc(const std::vector<double>& scores, const std::vector<Label>& labels) {
    if (scores.size() != labels.size())
        throw ShapeMismatch("scores and labels differ in length");
    std::size_t n_pos = 0, n_neg = 0;
    for (Label l : labels) (l == Label::AI ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0) throw SingleClass();

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]] == Label::AI) rank_sum_pos += midrank;
        i = j;
    }
    double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
    return (rank_sum_pos - np * (np + 1) / 2.0) / (np * nn);
}

// Majority vote over predicted labels; an exact tie goes to the class of the
// first paragraph (index 0).
inline Label vote_document(const std::vector<PredictionRecord>& records) {
    if (records.empty()) throw EmptyDocument();
    std::size_t ai = 0, human = 0;
    Label first = Label::Human;
    for (const auto& rec : records) {
        (rec.predicted_label == Label::AI ? ai : human) += 1;
        if (rec.paragraph_index == 0) first = rec.predicted_label;
    }
    if (ai > human) return Label::AI;
    if (human > ai) return Label::Human;
    return first;
}

inline EvaluationReport compute_report(const std::vector<PredictionRecord>& records,
                                       const std::vector<Label>& voted_doc_labels,
                                       const std::vector<Label>& true_doc_labels) {
    if (records.empty()) throw ValidationError("no prediction records");
    if (voted_doc_labels.size() != true_doc_labels.size())
        throw ShapeMismatch("voted and true document label lists differ");

    EvaluationReport report;
    report.n_paragraphs = records.size();
    std::size_t correct = 0;
    std::vector<double> scores;
    std::vector<Label> labels;
    scores.reserve(records.size());
    labels.reserve(records.size());
    for (const auto& rec : records) {
        if (rec.predicted_label == rec.true_label) ++correct;
        report.confusion[rec.true_label == Label::AI ? 1 : 0]
                        [rec.predicted_label == Label::AI ? 1 : 0] += 1;
        scores.push_back(rec.score);
        labels.push_back(rec.true_label);
    }
    report.paragraph_accuracy = static_cast<double>(correct) / records.size();
    report.auc = auc(scores, labels);

    report.n_documents = voted_doc_labels.size();
    std::size_t doc_correct = 0;
    for (std::size_t i = 0; i < voted_doc_labels.size(); ++i)
        if (voted_doc_labels[i] == true_doc_labels[i]) ++doc_correct;
    report.document_accuracy =
        voted_doc_labels.empty() ? 0.0
                                 : static_cast<double>(doc_correct) / voted_doc_labels.size();

    std::size_t first_total = 0, first_correct = 0;
    for (const auto& rec : records) {
        if (rec.paragraph_index != 0) continue;
        ++first_total;
        if (rec.predicted_label == rec.true_label) ++first_correct;
    }
    report.first_paragraph_accuracy =
        first_total == 0 ? 0.0 : static_cast<double>(first_correct) / first_total;
    return report;
}

namespace detail {

inline DataMatrix corpus_matrix(const Corpus& corpus) {
    DataMatrix matrix;
    matrix.reserve(corpus.paragraph_count());
    for (const auto& doc : corpus.documents)
        for (const auto& paragraph : doc.paragraphs) {
            FeatureRow row = extract_features(paragraph).as_array();
            matrix.emplace_back(row.begin(), row.end());
        }
    return matrix;
}

}  // namespace detail

// Global paragraph identity: (doc_id, paragraph_index) for every corpus row,
// in corpus order.
inline std::vector<std::pair<std::string, std::size_t>> paragraph_ids(const Corpus& corpus) {
    std::vector<std::pair<std::string, std::size_t>> ids;
    ids.reserve(corpus.paragraph_count());
    for (const auto& doc : corpus.documents)
        for (std::size_t p = 0; p < doc.paragraphs.size(); ++p)
            ids.emplace_back(doc.doc_id, p);
    return ids;
}

struct LoeoFold {
    std::size_t doc_index = 0;
    std::vector<std::size_t> train_rows;  // global row indices
    std::vector<std::size_t> test_rows;
};

inline std::vector<LoeoFold> loeo_folds(const Corpus& corpus) {
    std::vector<std::size_t> doc_offset(corpus.documents.size());
    std::size_t offset = 0;
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        doc_offset[d] = offset;
        offset += corpus.documents[d].paragraphs.size();
    }
    const std::size_t n_rows = offset;

    std::vector<LoeoFold> folds;
    folds.reserve(corpus.documents.size());
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        LoeoFold fold;
        fold.doc_index = d;
        std::size_t begin = doc_offset[d];
        std::size_t end = begin + corpus.documents[d].paragraphs.size();
        for (std::size_t r = 0; r < n_rows; ++r)
            (r >= begin && r < end ? fold.test_rows : fold.train_rows).push_back(r);
        folds.push_back(std::move(fold));
    }
    return folds;
}

// Leave-one-essay-out: for each document, train on every paragraph of every
// other document and score that document's paragraphs with the fold model.
inline std::vector<PredictionRecord> leave_one_essay_out(const Corpus& corpus,
                                                         const TrainConfig& config) {
    if (corpus.documents.size() < 2)
        throw ValidationError("leave-one-essay-out needs at least 2 documents");
    const DataMatrix matrix = detail::corpus_matrix(corpus);

    std::vector<Label> row_labels(matrix.size());
    std::size_t offset = 0;
    for (const auto& doc : corpus.documents)
        for (std::size_t p = 0; p < doc.paragraphs.size(); ++p)
            row_labels[offset++] = doc.label;

    std::vector<PredictionRecord> records;
    records.reserve(matrix.size());
    for (const LoeoFold& fold : loeo_folds(corpus)) {
        const auto& doc = corpus.documents[fold.doc_index];
        DataMatrix fold_matrix;
        std::vector<Label> fold_labels;
        fold_matrix.reserve(fold.train_rows.size());
        for (std::size_t r : fold.train_rows) {
            fold_matrix.push_back(matrix[r]);
            fold_labels.push_back(row_labels[r]);
        }
        bool any_human = false, any_ai = false;
        for (Label l : fold_labels) (l == Label::AI ? any_ai : any_human) = true;
        if (!any_human || !any_ai)
            throw DegenerateFold("fold for document " + doc.doc_id +
                                 " leaves a single-class training set");
        BoostedEnsemble model = train(fold_matrix, fold_labels, config);
        for (std::size_t p = 0; p < fold.test_rows.size(); ++p) {
            PredictionRecord rec;
            rec.doc_id = doc.doc_id;
            rec.paragraph_index = p;
            rec.true_label = doc.label;
            rec.score = model.predict_proba(matrix[fold.test_rows[p]]);
            rec.predicted_label = rec.score >= 0.5 ? Label::AI : Label::Human;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

// Groups records by doc_id (order of first appearance) and derives voted and
// true document labels, then assembles the report.
inline EvaluationReport report_from_records(const std::vector<PredictionRecord>& records) {
    std::vector<std::string> doc_order;
    std::map<std::string, std::vector<PredictionRecord>> by_doc;
    for (const auto& rec : records) {
        auto [it, inserted] = by_doc.try_emplace(rec.doc_id);
        if (inserted) doc_order.push_back(rec.doc_id);
        it->second.push_back(rec);
    }
    std::vector<Label> voted, truth;
    for (const auto& doc_id : doc_order) {
        auto& recs = by_doc.at(doc_id);
        std::sort(recs.begin(), recs.end(),
                  [](const PredictionRecord& a, const PredictionRecord& b) {
                      return a.paragraph_index < b.paragraph_index;
                  });
        voted.push_back(vote_document(recs));
        truth.push_back(recs.front().true_label);
    }
    return compute_report(records, voted, truth);
}

inline nlohmann::json report_to_json(const EvaluationReport& report) {
    nlohmann::json j;
    j["n_paragraphs"] = report.n_paragraphs;
    j["paragraph_accuracy"] = report.paragraph_accuracy;
    j["auc"] = report.auc;
    j["n_documents"] = report.n_documents;
    j["document_accuracy"] = report.document_accuracy;
    j["first_paragraph_accuracy"] = report.first_paragraph_accuracy;
    j["confusion"] = {{"human_as_human", report.confusion[0][0]},
                      {"human_as_ai", report.confusion[0][1]},
                      {"ai_as_human", report.confusion[1][0]},
                      {"ai_as_ai", report.confusion[1][1]}};
    return j;
}

// Fixed-width summary table, one row per evaluation.
inline std::string render_report_table(const EvaluationReport& report,
                                       const std::string& row_name = "Evaluation") {
    std::ostringstream out;
    out << std::left << std::setw(14) << "" << std::right << std::setw(10) << "Examples"
        << std::setw(10) << "Accuracy" << std::setw(8) << "AUC" << std::setw(10)
        << "Overall" << std::setw(14) << "1st Paragraph" << '\n';
    out << std::left << std::setw(14) << row_name << std::right << std::setw(10)
        << report.n_paragraphs << std::setw(9) << std::fixed << std::setprecision(1)
        << 100.0 * report.paragraph_accuracy << "%" << std::setw(8)
        << std::setprecision(3) << report.auc << std::setw(9) << std::setprecision(1)
        << 100.0 * report.document_accuracy << "%" << std::setw(13)
        << 100.0 * report.first_paragraph_accuracy << "%" << '\n';
    return out.str();
}

}  // namespace stylo
