// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stylo/eval.hpp"
#include "stylo/features.hpp"
#include "stylo/gbt.hpp"
#include "stylo/io.hpp"
#include "stylo/segment.hpp"
#include "stylo/synth.hpp"

#include "fixtures.hpp"
#include "gbt_oracle.hpp"

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, double seconds,
            const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << criterion << ": " << name
              << "  (" << std::fixed << std::setprecision(2) << seconds << "s)";
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
}

template <typename Fn>
void run(int criterion, const std::string& name, Fn&& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(criterion, name, ok, seconds, detail);
}

bool feature_fixtures(std::string& detail) {
    const auto& cases = fixtures::paragraphs();
    if (cases.size() < 10) {
        detail = "fewer than 10 fixtures";
        return false;
    }
    for (const auto& fixture : cases) {
        auto actual = stylo::extract_features(fixture.paragraph).as_array();
        for (std::size_t i = 0; i < stylo::kFeatureCount; ++i) {
            bool numeric = i == 7 || i == 8;
            bool ok = numeric ? std::fabs(actual[i] - fixture.expected[i]) <= 1e-9
                              : actual[i] == fixture.expected[i];
            if (!ok) {
                detail = "f" + std::to_string(i + 1) + " mismatch on \"" +
                         fixture.paragraph.substr(0, 30) + "...\"";
                return false;
            }
        }
    }
    detail = std::to_string(cases.size()) + " fixtures";
    return true;
}

bool segmenter_suite(std::string& detail) {
    for (const auto& abbr : stylo::default_abbreviations()) {
        std::string paragraph = "We refer to " + abbr + " 5 today. More text follows.";
        if (stylo::split_sentences(paragraph).size() != 2) {
            detail = "abbreviation \"" + abbr + "\" split wrongly";
            return false;
        }
    }
    auto sentences = stylo::split_sentences(
        "But why does this matter? Because the 2023 results (see Fig. 2) differ; "
        "however, Smith et al. argue otherwise - a claim we revisit.");
    if (sentences.size() != 2 || sentences[0].word_count != 5 ||
        sentences[1].word_count != 19) {
        detail = "Fig. 2 / et al. fixture word counts wrong";
        return false;
    }
    return true;
}

bool gbt_oracle_equivalence(std::string& detail) {
    stylo::detail::Rng meta(99);
    for (int dataset = 0; dataset < 20; ++dataset) {
        std::size_t n_rows = 20 + meta.below(181);  // <= 200
        std::size_t n_cols = 1 + meta.below(5);     // <= 5
        oracle::Dataset data;
        stylo::detail::Rng rng(1000 + static_cast<std::uint64_t>(dataset));
        for (std::size_t r = 0; r < n_rows; ++r) {
            std::vector<double> row;
            for (std::size_t c = 0; c < n_cols; ++c) row.push_back(rng.uniform());
            data.rows.push_back(std::move(row));
            data.labels.push_back(rng.below(2) ? stylo::Label::AI : stylo::Label::Human);
        }
        data.labels[0] = stylo::Label::AI;
        data.labels[1] = stylo::Label::Human;

        stylo::TrainConfig cfg;  // paper defaults, 50 rounds
        auto model = stylo::train(data.rows, data.labels, cfg);
        auto reference = oracle::train(data, cfg);
        if (model.trees.size() != reference.size()) {
            detail = "tree count mismatch on dataset " + std::to_string(dataset);
            return false;
        }
        for (std::size_t t = 0; t < reference.size(); ++t)
            if (!oracle::same_tree(*reference[t], model.trees[t])) {
                detail = "dataset " + std::to_string(dataset) + " tree " +
                         std::to_string(t) + " differs";
                return false;
            }

        // loss is non-increasing over all rounds
        std::vector<double> margin(n_rows, 0.0);
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t <= model.trees.size(); ++t) {
            if (t > 0)
                for (std::size_t r = 0; r < n_rows; ++r)
                    margin[r] += stylo::tree_margin(model.trees[t - 1], data.rows[r]);
            double loss = 0;
            for (std::size_t r = 0; r < n_rows; ++r) {
                double p = stylo::logistic(margin[r]);
                double y = data.labels[r] == stylo::Label::AI ? 1.0 : 0.0;
                loss += -(y * std::log(p) + (1 - y) * std::log(1 - p));
            }
            if (loss > prev + 1e-9) {
                detail = "loss increased at round " + std::to_string(t);
                return false;
            }
            prev = loss;
        }
    }
    detail = "20 datasets, node-for-node";
    return true;
}

double auc_brute(const std::vector<double>& scores,
                 const std::vector<stylo::Label>& labels) {
    double wins = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != stylo::Label::AI) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != stylo::Label::Human) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

bool auc_oracle(std::string& detail) {
    stylo::detail::Rng rng(7);
    for (int instance = 0; instance < 1000; ++instance) {
        std::size_t n = 2 + rng.below(49);  // <= 50
        std::vector<double> scores;
        std::vector<stylo::Label> labels;
        for (std::size_t i = 0; i < n; ++i) {
            scores.push_back(static_cast<double>(rng.below(10)) / 10.0);  // many ties
            labels.push_back(rng.below(2) ? stylo::Label::AI : stylo::Label::Human);
        }
        labels[0] = stylo::Label::AI;
        labels[n - 1] = stylo::Label::Human;
        if (stylo::auc(scores, labels) != auc_brute(scores, labels)) {
            detail = "mismatch on instance " + std::to_string(instance);
            return false;
        }
        if (instance < 100) {
            std::vector<double> transformed;
            for (double s : scores) transformed.push_back(std::exp(2.0 * s) + 1.0);
            if (std::fabs(stylo::auc(transformed, labels) - stylo::auc(scores, labels)) >
                1e-12) {
                detail = "monotone invariance broken on instance " +
                         std::to_string(instance);
                return false;
            }
        }
    }
    detail = "1000 instances exact";
    return true;
}

bool loeo_leakage(std::string& detail) {
    auto corpus = stylo::generate_synthetic(stylo::default_profile(13), 5, 5);
    auto ids = stylo::paragraph_ids(corpus);
    for (const auto& fold : stylo::loeo_folds(corpus)) {
        std::set<std::pair<std::string, std::size_t>> train_ids, test_ids;
        for (auto r : fold.train_rows) train_ids.insert(ids[r]);
        for (auto r : fold.test_rows) test_ids.insert(ids[r]);
        for (const auto& id : test_ids)
            if (train_ids.count(id)) {
                detail = "paragraph in both train and test";
                return false;
            }
        const std::string& held = corpus.documents[fold.doc_index].doc_id;
        for (const auto& id : train_ids)
            if (id.first == held) {
                detail = "held-out doc paragraph leaked into training";
                return false;
            }
    }
    auto records = stylo::leave_one_essay_out(corpus, stylo::TrainConfig{});
    std::set<std::pair<std::string, std::size_t>> seen;
    for (const auto& rec : records) seen.insert({rec.doc_id, rec.paragraph_index});
    if (records.size() != corpus.paragraph_count() ||
        seen.size() != corpus.paragraph_count()) {
        detail = "coverage is not exactly one prediction per paragraph";
        return false;
    }
    detail = "10 documents, ID-level disjointness";
    return true;
}

bool voting_rules(std::string& detail) {
    using stylo::Label;
    auto rec = [](std::size_t index, Label predicted) {
        stylo::PredictionRecord r;
        r.doc_id = "d";
        r.paragraph_index = index;
        r.true_label = Label::AI;
        r.predicted_label = predicted;
        return r;
    };
    if (stylo::vote_document({rec(0, Label::AI), rec(1, Label::AI),
                              rec(2, Label::Human)}) != Label::AI) {
        detail = "majority rule failed";
        return false;
    }
    if (stylo::vote_document({rec(0, Label::Human), rec(1, Label::AI)}) != Label::Human) {
        detail = "tie rule failed";
        return false;
    }
    if (stylo::vote_document({rec(0, Label::AI)}) != Label::AI) {
        detail = "single-paragraph rule failed";
        return false;
    }
    // order-robustness: permute non-first records of a tied document
    std::vector<stylo::PredictionRecord> records = {rec(0, Label::Human),
                                                    rec(1, Label::AI),
                                                    rec(2, Label::AI),
                                                    rec(3, Label::Human)};
    stylo::Label expected = stylo::vote_document(records);
    std::vector<std::size_t> perm = {2, 1, 3};
    std::sort(perm.begin(), perm.end());
    do {
        std::vector<stylo::PredictionRecord> shuffled = {records[0]};
        for (std::size_t p : perm) shuffled.push_back(records[p]);
        if (stylo::vote_document(shuffled) != expected) {
            detail = "vote changed under permutation";
            return false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

bool synthetic_end_to_end(std::string& detail) {
    auto corpus = stylo::generate_synthetic(stylo::default_profile(7), 30, 60);
    auto records = stylo::leave_one_essay_out(corpus, stylo::TrainConfig{});
    auto report = stylo::report_from_records(records);
    std::ostringstream d;
    d << "paragraph " << std::setprecision(3) << report.paragraph_accuracy << ", doc "
      << report.document_accuracy << ", first " << report.first_paragraph_accuracy;
    detail = d.str();
    return report.paragraph_accuracy >= 0.90 && report.document_accuracy == 1.0 &&
           report.first_paragraph_accuracy >= 0.95;
}

bool direction_property(std::string& detail) {
    auto corpus = stylo::generate_synthetic(stylo::default_profile(31), 200, 200);
    std::array<double, stylo::kFeatureCount> human_sum{}, ai_sum{};
    std::size_t n_human = 0, n_ai = 0;
    for (const auto& doc : corpus.documents)
        for (const auto& paragraph : doc.paragraphs) {
            auto row = stylo::extract_features(paragraph).as_array();
            auto& sum = doc.label == stylo::Label::Human ? human_sum : ai_sum;
            for (std::size_t i = 0; i < row.size(); ++i) sum[i] += row[i];
            (doc.label == stylo::Label::Human ? n_human : n_ai) += 1;
        }
    for (std::size_t i = 0; i < stylo::kFeatureCount; ++i) {
        double diff = human_sum[i] / n_human - ai_sum[i] / n_ai;
        bool human_dir = stylo::feature_catalog()[i].expected_direction ==
                         stylo::FeatureDirection::Human;
        if ((human_dir && diff <= 0) || (!human_dir && diff >= 0)) {
            detail = "f" + std::to_string(i + 1) + " direction wrong";
            return false;
        }
    }
    detail = "all 20 signs match";
    return true;
}

bool dispersion_baseline(std::string& detail) {
    auto corpus = stylo::generate_synthetic(stylo::default_profile(7), 30, 60);
    std::vector<double> scores;
    std::vector<stylo::Label> labels;
    for (const auto& doc : corpus.documents) {
        scores.push_back(stylo::doc_dispersion(doc.paragraphs));
        // dispersion is the Human-direction score; make Human the positive class
        labels.push_back(doc.label == stylo::Label::Human ? stylo::Label::AI
                                                          : stylo::Label::Human);
    }
    double value = stylo::auc(scores, labels);
    detail = "AUC " + std::to_string(value);
    return value >= 0.95;
}

bool cli_determinism(std::string& detail) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "stylo_acceptance";
    fs::create_directories(dir);
    auto corpus = stylo::generate_synthetic(stylo::default_profile(5), 5, 5);
    {
        std::ostringstream out;
        stylo::save_row_csv(corpus, out);
        stylo::atomic_write(dir / "corpus.csv", out.str());
    }
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    std::string cli = STYLO_CLI_PATH;
    auto shell = [&](const std::string& args) {
        std::string cmd = cli + " " + args + " >/dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    std::string corpus_path = (dir / "corpus.csv").string();
    for (int pass = 1; pass <= 2; ++pass) {
        std::string suffix = std::to_string(pass);
        if (!shell("train --in " + corpus_path + " --out " +
                   (dir / ("model" + suffix + ".json")).string()) ||
            !shell("cv --in " + corpus_path + " --out " +
                   (dir / ("report" + suffix + ".json")).string())) {
            detail = "CLI invocation failed";
            return false;
        }
    }
    if (slurp(dir / "model1.json") != slurp(dir / "model2.json")) {
        detail = "model files differ between runs";
        return false;
    }
    if (slurp(dir / "report1.json") != slurp(dir / "report2.json")) {
        detail = "report files differ between runs";
        return false;
    }
    if (slurp(dir / "model1.json").empty()) {
        detail = "model file is empty";
        return false;
    }
    return true;
}

void paper_corpus_criterion() {
    const char* env = std::getenv("STYLO_PAPER_CORPUS");
    std::string path = env ? env : "data/paper_corpus.csv";
    if (!std::filesystem::exists(path)) {
        std::cout << "SKIPPED  criterion 11: paper-corpus replication (corpus not "
                     "supplied; set STYLO_PAPER_CORPUS)"
                  << std::endl;
        return;
    }
    run(11, "paper-corpus replication", [&](std::string& detail) {
        auto corpus = stylo::load_corpus(path, stylo::CorpusFormat::RowCsv);
        auto records = stylo::leave_one_essay_out(corpus, stylo::TrainConfig{});
        auto report = stylo::report_from_records(records);
        std::ostringstream d;
        d << "paragraph " << report.paragraph_accuracy << ", doc "
          << report.document_accuracy;
        detail = d.str();
        return std::fabs(report.paragraph_accuracy - 0.94) <= 0.03 &&
               report.document_accuracy >= 0.98;
    });
}

}  // namespace

int main() {
    run(1, "feature-extractor fixtures", feature_fixtures);
    run(2, "segmenter abbreviation suite", segmenter_suite);
    run(3, "gbt oracle equivalence + loss monotonicity", gbt_oracle_equivalence);
    run(4, "auc oracle + monotone invariance", auc_oracle);
    run(5, "loeo leakage exclusion + coverage", loeo_leakage);
    run(6, "voting and tie rules", voting_rules);
    run(7, "synthetic end-to-end (30 human / 60 ai)", synthetic_end_to_end);
    run(8, "feature direction property (200 docs/class)", direction_property);
    run(9, "document-dispersion baseline", dispersion_baseline);
    run(10, "cli determinism (train, cv)", cli_determinism);
    paper_corpus_criterion();
    if (failures) std::cout << failures << " criterion(s) failed" << std::endl;
    return failures;
}
