// stylo: stylometric human-vs-chatbot text classifier.
//
// Subcommands: extract, train, predict, cv, synth, report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stylo/corpus.hpp"
#include "stylo/eval.hpp"
#include "stylo/features.hpp"
#include "stylo/gbt.hpp"
#include "stylo/io.hpp"
#include "stylo/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOperational = 1;
constexpr int kExitValidation = 2;

stylo::CorpusFormat parse_format(const std::string& format) {
    if (format == "row-csv") return stylo::CorpusFormat::RowCsv;
    if (format == "doc-jsonl") return stylo::CorpusFormat::DocJsonl;
    throw stylo::ValidationError("unknown format: " + format);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw stylo::ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Plain text: one paragraph per non-empty line, a single unlabeled document.
stylo::Corpus load_input(const std::string& path, const std::string& format) {
    if (format == "text") {
        stylo::Corpus corpus;
        stylo::DocumentRecord doc;
        doc.doc_id = "doc";
        doc.paragraphs = stylo::split_paragraphs(read_file(path));
        if (doc.paragraphs.empty())
            throw stylo::ValidationError(path + " contains no non-empty lines");
        corpus.documents.push_back(std::move(doc));
        corpus.provenance = path;
        return corpus;
    }
    return stylo::load_corpus(path, parse_format(format));
}

struct TrainFlags {
    stylo::TrainConfig config;

    void attach(CLI::App* cmd) {
        cmd->add_option("--eta", config.learning_rate, "learning rate");
        cmd->add_option("--max-depth", config.max_depth, "maximum tree depth");
        cmd->add_option("--rounds", config.n_rounds, "boosting rounds");
        cmd->add_option("--min-child-weight", config.min_child_weight,
                        "minimum hessian sum per child");
        cmd->add_option("--gamma", config.min_split_gain, "minimum split gain");
        cmd->add_option("--lambda", config.l2_reg, "L2 leaf regularization");
        cmd->add_option("--subsample", config.row_subsample, "row subsample fraction");
        cmd->add_option("--colsample", config.column_subsample,
                        "column subsample fraction");
        cmd->add_option("--seed", config.rng_seed, "random seed");
    }
};

stylo::DataMatrix corpus_rows(const stylo::Corpus& corpus, std::vector<stylo::Label>* labels) {
    stylo::DataMatrix matrix;
    for (const auto& doc : corpus.documents)
        for (const auto& paragraph : doc.paragraphs) {
            auto row = stylo::extract_features(paragraph).as_array();
            matrix.emplace_back(row.begin(), row.end());
            if (labels) labels->push_back(doc.label);
        }
    return matrix;
}

int run(int argc, char** argv) {
    CLI::App app{"stylometric human-vs-chatbot text classifier"};
    app.require_subcommand(1);

    std::string in_path, out_path, model_path, predictions_path, profile_path;
    std::string format = "row-csv";
    std::size_t n_human = 30, n_ai = 60;
    bool seed_given = false;
    std::uint64_t seed = 0;
    TrainFlags train_flags;

    auto* extract = app.add_subcommand("extract", "write the feature matrix for a corpus");
    extract->add_option("--in", in_path, "corpus file")->required();
    extract->add_option("--out", out_path, "feature matrix CSV")->required();
    extract->add_option("--format", format, "row-csv or doc-jsonl");

    auto* train = app.add_subcommand("train", "train a model on a labeled corpus");
    train->add_option("--in", in_path, "corpus file")->required();
    train->add_option("--out", out_path, "model file")->required();
    train->add_option("--format", format, "row-csv or doc-jsonl");
    train_flags.attach(train);

    auto* predict = app.add_subcommand("predict", "score a corpus or plain text with a model");
    predict->add_option("--model", model_path, "model file")->required();
    predict->add_option("--in", in_path, "corpus or text file")->required();
    predict->add_option("--out", out_path, "predictions CSV")->required();
    predict->add_option("--format", format, "row-csv, doc-jsonl, or text");

    auto* cv = app.add_subcommand("cv", "leave-one-essay-out cross-validation");
    cv->add_option("--in", in_path, "corpus file")->required();
    cv->add_option("--out", out_path, "report JSON")->required();
    cv->add_option("--predictions", predictions_path, "also write per-paragraph predictions CSV");
    cv->add_option("--format", format, "row-csv or doc-jsonl");
    train_flags.attach(cv);

    auto* synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    synth->add_option("--out", out_path, "corpus file")->required();
    synth->add_option("--profile", profile_path, "generator profile JSON");
    synth->add_option("--human", n_human, "human documents");
    synth->add_option("--ai", n_ai, "AI documents");
    synth->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
        seed_given = true;
    });
    synth->add_option("--format", format, "row-csv or doc-jsonl");

    auto* report = app.add_subcommand("report", "summarize a predictions CSV");
    report->add_option("--in", in_path, "predictions CSV")->required();
    report->add_option("--out", out_path, "report JSON");

    CLI11_PARSE(app, argc, argv);

    if (extract->parsed()) {
        stylo::Corpus corpus = stylo::load_corpus(in_path, parse_format(format));
        stylo::atomic_write(out_path, stylo::feature_matrix_csv(corpus));
    } else if (train->parsed()) {
        stylo::Corpus corpus = stylo::load_corpus(in_path, parse_format(format));
        std::vector<stylo::Label> labels;
        stylo::DataMatrix matrix = corpus_rows(corpus, &labels);
        stylo::BoostedEnsemble model =
            stylo::train(matrix, labels, train_flags.config, stylo::feature_names());
        stylo::atomic_write(out_path, stylo::serialize(model));
    } else if (predict->parsed()) {
        stylo::BoostedEnsemble model = stylo::deserialize(read_file(model_path));
        stylo::Corpus corpus = load_input(in_path, format);
        std::ostringstream out;
        out << "doc_id,paragraph_index,predicted_label,score,doc_voted_label\n";
        for (const auto& doc : corpus.documents) {
            std::vector<stylo::PredictionRecord> records;
            for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
                auto row = stylo::extract_features(doc.paragraphs[p]).as_array();
                stylo::PredictionRecord rec;
                rec.doc_id = doc.doc_id;
                rec.paragraph_index = p;
                rec.score = model.predict_proba(row);
                rec.predicted_label =
                    rec.score >= 0.5 ? stylo::Label::AI : stylo::Label::Human;
                records.push_back(std::move(rec));
            }
            stylo::Label voted = stylo::vote_document(records);
            for (const auto& rec : records)
                out << stylo::detail::csv_escape(rec.doc_id) << ','
                    << rec.paragraph_index << ',' << stylo::to_string(rec.predicted_label)
                    << ',' << stylo::detail::format_number(rec.score) << ','
                    << stylo::to_string(voted) << '\n';
        }
        stylo::atomic_write(out_path, out.str());
    } else if (cv->parsed()) {
        stylo::Corpus corpus = stylo::load_corpus(in_path, parse_format(format));
        auto records = stylo::leave_one_essay_out(corpus, train_flags.config);
        stylo::EvaluationReport rep = stylo::report_from_records(records);
        stylo::atomic_write(out_path, stylo::report_to_json(rep).dump(2) + "\n");
        if (!predictions_path.empty())
            stylo::atomic_write(predictions_path, stylo::predictions_csv(records));
        std::cout << stylo::render_report_table(rep, "LOEO");
    } else if (synth->parsed()) {
        stylo::SynthProfile profile = profile_path.empty()
                                          ? stylo::default_profile()
                                          : stylo::load_profile(profile_path);
        if (seed_given) profile.rng_seed = seed;
        stylo::Corpus corpus = stylo::generate_synthetic(profile, n_human, n_ai);
        std::ostringstream out;
        if (parse_format(format) == stylo::CorpusFormat::RowCsv)
            stylo::save_row_csv(corpus, out);
        else
            stylo::save_doc_jsonl(corpus, out);
        stylo::atomic_write(out_path, out.str());
    } else if (report->parsed()) {
        auto records = stylo::load_predictions_csv(in_path);
        stylo::EvaluationReport rep = stylo::report_from_records(records);
        if (!out_path.empty())
            stylo::atomic_write(out_path, stylo::report_to_json(rep).dump(2) + "\n");
        std::cout << stylo::render_report_table(rep, "Report");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const stylo::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOperational;
    } catch (const stylo::MalformedModel& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOperational;
    } catch (const stylo::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOperational;
    }
}
