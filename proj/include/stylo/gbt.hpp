#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "stylo/corpus.hpp"
#include "stylo/errors.hpp"

namespace stylo {

using DataMatrix = std::vector<std::vector<double>>;

struct TrainConfig {
    double learning_rate = 0.2;    // eta
    int max_depth = 6;
    double min_child_weight = 1.0;
    double min_split_gain = 0.0;   // gamma
    double row_subsample = 1.0;
    double column_subsample = 1.0;
    int n_rounds = 50;
    double l2_reg = 1.0;           // lambda
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (learning_rate <= 0 || learning_rate > 1)
            throw ValidationError("learning_rate must be in (0,1]");
        if (max_depth < 1) throw ValidationError("max_depth must be >= 1");
        if (n_rounds < 1) throw ValidationError("n_rounds must be >= 1");
        if (row_subsample <= 0 || row_subsample > 1 || column_subsample <= 0 ||
            column_subsample > 1)
            throw ValidationError("subsample fractions must be in (0,1]");
    }
};

// Flattened tree node; left < 0 marks a leaf.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf margin contribution, shrinkage applied

    bool is_leaf() const { return left < 0; }
};

using Tree = std::vector<TreeNode>;

inline double tree_margin(const Tree& tree, std::span<const double> row) {
    int i = 0;
    while (!tree[static_cast<std::size_t>(i)].is_leaf()) {
        const TreeNode& node = tree[static_cast<std::size_t>(i)];
        i = row[static_cast<std::size_t>(node.feature)] < node.threshold ? node.left
                                                                         : node.right;
    }
    return tree[static_cast<std::size_t>(i)].value;
}

inline double logistic(double margin) { return 1.0 / (1.0 + std::exp(-margin)); }

struct BoostedEnsemble {
    std::vector<Tree> trees;
    double base_margin = 0.0;
    TrainConfig config;
    std::vector<std::string> feature_names;
    std::string positive_class = "AI";

    double predict_margin(std::span<const double> row) const {
        double margin = base_margin;
        for (const auto& tree : trees) margin += tree_margin(tree, row);
        return margin;
    }
    // P(positive class), always in (0,1).
    double predict_proba(std::span<const double> row) const {
        return logistic(predict_margin(row));
    }
    Label predict_class(std::span<const double> row) const {
        return predict_proba(row) >= 0.5 ? Label::AI : Label::Human;
    }
};

namespace detail {

// Portable seeded uniforms; std:: distributions are not bit-stable across
// standard libraries.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed + 0x9E3779B97F4A7C15ULL) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Sample k of n indices, ascending.
    std::vector<std::size_t> sample(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t i = 0; i < k; ++i)
            std::swap(idx[i], idx[i + below(n - i)]);
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    }
};

struct SplitCandidate {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

class TreeGrower {
public:
    TreeGrower(const DataMatrix& rows, const std::vector<double>& grad,
               const std::vector<double>& hess, const TrainConfig& cfg,
               const std::vector<std::size_t>& columns)
        : rows_(rows), grad_(grad), hess_(hess), cfg_(cfg), columns_(columns) {}

    Tree grow(std::vector<std::size_t> row_ids) {
        Tree tree;
        build(tree, std::move(row_ids), 0);
        return tree;
    }

private:
    int build(Tree& tree, std::vector<std::size_t> row_ids, int depth) {
        double sum_g = 0.0, sum_h = 0.0;
        for (std::size_t r : row_ids) {
            sum_g += grad_[r];
            sum_h += hess_[r];
        }
        int node_id = static_cast<int>(tree.size());
        tree.emplace_back();

        SplitCandidate best;
        if (depth < cfg_.max_depth) best = find_split(row_ids, sum_g, sum_h);
        if (!best.found) {
            tree[static_cast<std::size_t>(node_id)].value =
                -cfg_.learning_rate * sum_g / (sum_h + cfg_.l2_reg);
            return node_id;
        }

        std::vector<std::size_t> left_ids, right_ids;
        for (std::size_t r : row_ids) {
            if (rows_[r][static_cast<std::size_t>(best.feature)] < best.threshold)
                left_ids.push_back(r);
            else
                right_ids.push_back(r);
        }
        row_ids.clear();
        row_ids.shrink_to_fit();

        int left = build(tree, std::move(left_ids), depth + 1);
        int right = build(tree, std::move(right_ids), depth + 1);
        TreeNode& node = tree[static_cast<std::size_t>(node_id)];
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.left = left;
        node.right = right;
        return node_id;
    }

    // Exact greedy: every midpoint between consecutive distinct sorted values
    // of every candidate column. Ties keep the lowest (feature, threshold).
    SplitCandidate find_split(const std::vector<std::size_t>& row_ids, double sum_g,
                              double sum_h) const {
        SplitCandidate best;
        const double lambda = cfg_.l2_reg;
        const double parent_score = sum_g * sum_g / (sum_h + lambda);

        std::vector<std::pair<double, std::size_t>> sorted;
        sorted.reserve(row_ids.size());
        for (std::size_t col : columns_) {
            sorted.clear();
            for (std::size_t r : row_ids) sorted.emplace_back(rows_[r][col], r);
            std::sort(sorted.begin(), sorted.end());

            double g_left = 0.0, h_left = 0.0;
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                g_left += grad_[sorted[i].second];
                h_left += hess_[sorted[i].second];
                if (sorted[i].first == sorted[i + 1].first) continue;
                double h_right = sum_h - h_left;
                if (h_left < cfg_.min_child_weight || h_right < cfg_.min_child_weight)
                    continue;
                double g_right = sum_g - g_left;
                double gain = 0.5 * (g_left * g_left / (h_left + lambda) +
                                     g_right * g_right / (h_right + lambda) -
                                     parent_score) -
                              cfg_.min_split_gain;
                if (gain > 0 && gain > best.gain) {
                    best.found = true;
                    best.feature = static_cast<int>(col);
                    best.threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
                    best.gain = gain;
                }
            }
        }
        return best;
    }

    const DataMatrix& rows_;
    const std::vector<double>& grad_;
    const std::vector<double>& hess_;
    const TrainConfig& cfg_;
    const std::vector<std::size_t>& columns_;
};

}  // namespace detail

// Second-order logistic boosting with exact greedy splits. AI is the
// positive class (y = 1).
inline BoostedEnsemble train(const DataMatrix& matrix, const std::vector<Label>& labels,
                             const TrainConfig& config,
                             std::vector<std::string> names = {}) {
    config.validate();
    if (matrix.size() != labels.size())
        throw ShapeMismatch("matrix has " + std::to_string(matrix.size()) +
                            " rows but " + std::to_string(labels.size()) + " labels");
    if (matrix.size() < 2) throw ValidationError("need at least 2 rows");
    bool any_human = false, any_ai = false;
    for (Label l : labels) (l == Label::AI ? any_ai : any_human) = true;
    if (!any_human || !any_ai) throw DegenerateLabels();

    const std::size_t n_rows = matrix.size();
    const std::size_t n_cols = matrix[0].size();
    for (const auto& row : matrix)
        if (row.size() != n_cols)
            throw ShapeMismatch("ragged feature matrix");

    BoostedEnsemble model;
    model.config = config;
    if (names.empty())
        for (std::size_t j = 0; j < n_cols; ++j)
            names.push_back("f" + std::to_string(j + 1));
    if (names.size() != n_cols)
        throw ShapeMismatch("feature name count does not match matrix width");
    model.feature_names = std::move(names);

    std::vector<double> margin(n_rows, model.base_margin);
    std::vector<double> grad(n_rows), hess(n_rows);
    detail::Rng rng(config.rng_seed);

    std::vector<std::size_t> all_rows(n_rows), all_cols(n_cols);
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    std::iota(all_cols.begin(), all_cols.end(), std::size_t{0});

    for (int round = 0; round < config.n_rounds; ++round) {
        for (std::size_t r = 0; r < n_rows; ++r) {
            double p = logistic(margin[r]);
            double y = labels[r] == Label::AI ? 1.0 : 0.0;
            grad[r] = p - y;
            hess[r] = p * (1.0 - p);
        }

        std::vector<std::size_t> rows = all_rows;
        std::vector<std::size_t> cols = all_cols;
        if (config.row_subsample < 1.0) {
            auto k = std::max<std::size_t>(
                1, static_cast<std::size_t>(config.row_subsample * n_rows));
            rows = rng.sample(n_rows, k);
        }
        if (config.column_subsample < 1.0) {
            auto k = std::max<std::size_t>(
                1, static_cast<std::size_t>(config.column_subsample * n_cols));
            cols = rng.sample(n_cols, k);
        }

        detail::TreeGrower grower(matrix, grad, hess, config, cols);
        Tree tree = grower.grow(std::move(rows));
        for (std::size_t r = 0; r < n_rows; ++r)
            margin[r] += tree_margin(tree, matrix[r]);
        model.trees.push_back(std::move(tree));
    }
    return model;
}

inline double predict_proba(const BoostedEnsemble& model, std::span<const double> row) {
    return model.predict_proba(row);
}

inline Label predict_class(const BoostedEnsemble& model, std::span<const double> row) {
    return model.predict_class(row);
}

inline constexpr int kModelFormatVersion = 1;

inline std::string serialize(const BoostedEnsemble& model) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["base_margin"] = model.base_margin;
    j["positive_class"] = model.positive_class;
    j["feature_names"] = model.feature_names;
    j["config"] = {{"learning_rate", model.config.learning_rate},
                   {"max_depth", model.config.max_depth},
                   {"min_child_weight", model.config.min_child_weight},
                   {"min_split_gain", model.config.min_split_gain},
                   {"row_subsample", model.config.row_subsample},
                   {"column_subsample", model.config.column_subsample},
                   {"n_rounds", model.config.n_rounds},
                   {"l2_reg", model.config.l2_reg},
                   {"rng_seed", model.config.rng_seed}};
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : model.trees) {
        nlohmann::json t;
        auto& feature = t["feature"] = nlohmann::json::array();
        auto& threshold = t["threshold"] = nlohmann::json::array();
        auto& left = t["left"] = nlohmann::json::array();
        auto& right = t["right"] = nlohmann::json::array();
        auto& value = t["value"] = nlohmann::json::array();
        for (const auto& node : tree) {
            feature.push_back(node.feature);
            threshold.push_back(node.threshold);
            left.push_back(node.left);
            right.push_back(node.right);
            value.push_back(node.value);
        }
        trees.push_back(std::move(t));
    }
    j["trees"] = std::move(trees);
    return j.dump(2) + "\n";
}

inline BoostedEnsemble deserialize(std::string_view bytes) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedModel(std::string("model parse failure: ") + e.what());
    }
    try {
        if (j.at("format_version").get<int>() != kModelFormatVersion)
            throw MalformedModel("unsupported format_version");
        BoostedEnsemble model;
        model.base_margin = j.at("base_margin").get<double>();
        model.positive_class = j.at("positive_class").get<std::string>();
        model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        const auto& c = j.at("config");
        model.config.learning_rate = c.at("learning_rate").get<double>();
        model.config.max_depth = c.at("max_depth").get<int>();
        model.config.min_child_weight = c.at("min_child_weight").get<double>();
        model.config.min_split_gain = c.at("min_split_gain").get<double>();
        model.config.row_subsample = c.at("row_subsample").get<double>();
        model.config.column_subsample = c.at("column_subsample").get<double>();
        model.config.n_rounds = c.at("n_rounds").get<int>();
        model.config.l2_reg = c.at("l2_reg").get<double>();
        model.config.rng_seed = c.at("rng_seed").get<std::uint64_t>();

        const int n_features = static_cast<int>(model.feature_names.size());
        for (const auto& t : j.at("trees")) {
            const auto& feature = t.at("feature");
            const auto& threshold = t.at("threshold");
            const auto& left = t.at("left");
            const auto& right = t.at("right");
            const auto& value = t.at("value");
            const std::size_t n = feature.size();
            if (threshold.size() != n || left.size() != n || right.size() != n ||
                value.size() != n || n == 0)
                throw MalformedModel("inconsistent tree arrays");
            Tree tree(n);
            for (std::size_t i = 0; i < n; ++i) {
                TreeNode& node = tree[i];
                node.feature = feature[i].get<int>();
                node.threshold = threshold[i].get<double>();
                node.left = left[i].get<int>();
                node.right = right[i].get<int>();
                node.value = value[i].get<double>();
                if (!std::isfinite(node.threshold) || !std::isfinite(node.value))
                    throw MalformedModel("non-finite value in tree");
                if (node.is_leaf()) {
                    if (node.right >= 0) throw MalformedModel("half-leaf node");
                } else {
                    // children must point forward so evaluation terminates
                    if (node.feature < 0 || node.feature >= n_features ||
                        node.left <= static_cast<int>(i) ||
                        node.left >= static_cast<int>(n) ||
                        node.right <= static_cast<int>(i) ||
                        node.right >= static_cast<int>(n))
                        throw MalformedModel("invalid node indices");
                }
            }
            model.trees.push_back(std::move(tree));
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedModel(std::string("model field error: ") + e.what());
    }
}

}  // namespace stylo
