#include "pf/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pf {

namespace {

struct Split {
    bool found = false;
    double impurity = 0.0;
    std::size_t feature = 0;
    double threshold = 0.0;
};

// Impurities within this relative distance are ties; equal rationals can round differently.
constexpr double kTieTolerance = 1e-12;

bool better(const Split& candidate, const Split& best) {
    if (!best.found) return true;
    const double scale = std::max({1.0, std::abs(candidate.impurity), std::abs(best.impurity)});
    if (std::abs(candidate.impurity - best.impurity) > kTieTolerance * scale) {
        return candidate.impurity < best.impurity;
    }
    if (candidate.feature != best.feature) return candidate.feature < best.feature;
    return candidate.threshold < best.threshold;
}

// n * gini(counts) = n - sum(c^2) / n
double weighted_gini(std::span<const double> counts, double n) {
    if (n <= 0.0) return 0.0;
    double sq = 0.0;
    for (double c : counts) sq += c * c;
    return n - sq / n;
}

std::uint32_t majority(std::span<const double> counts) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < counts.size(); ++k) {
        if (counts[k] > counts[best]) best = k;
    }
    return static_cast<std::uint32_t>(best);
}

}  // namespace

DecisionTree DecisionTree::fit(const Dataset& data, std::span<const std::size_t> samples, const TreeParams& params,
                               Rng& rng) {
    DecisionTree tree;
    const std::size_t n_features = data.cols;
    const std::size_t K = data.n_classes;
    const std::size_t mtry = (params.max_features == 0 || params.max_features > n_features) ? n_features
                                                                                            : params.max_features;

    std::vector<std::size_t> work(samples.begin(), samples.end());
    std::vector<std::size_t> features(n_features);
    std::vector<std::pair<double, std::size_t>> column;
    std::vector<double> left(K), right(K), counts(K);

    struct Pending {
        std::int32_t node;
        std::size_t begin, end, depth;
    };
    std::vector<Pending> stack;
    tree.nodes_.push_back({});
    stack.push_back({0, 0, work.size(), 0});

    while (!stack.empty()) {
        const Pending task = stack.back();
        stack.pop_back();
        const std::size_t n = task.end - task.begin;

        std::fill(counts.begin(), counts.end(), 0.0);
        for (std::size_t i = task.begin; i < task.end; ++i) counts[data.labels[work[i]]] += 1.0;
        tree.nodes_[task.node].prediction = majority(counts);

        const bool pure = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1;
        if (pure || n < params.min_samples_split || (params.max_depth && task.depth >= params.max_depth)) continue;

        std::iota(features.begin(), features.end(), std::size_t{0});
        Split best;
        std::size_t evaluated = 0;
        for (std::size_t j = 0; j < n_features && evaluated < mtry; ++j) {
            const std::size_t pick = j + static_cast<std::size_t>(rng.below(n_features - j));
            std::swap(features[j], features[pick]);
            const std::size_t f = features[j];

            column.clear();
            for (std::size_t i = task.begin; i < task.end; ++i) {
                column.emplace_back(data.at(work[i], f), data.labels[work[i]]);
            }
            std::sort(column.begin(), column.end());
            if (column.front().first == column.back().first) continue;
            ++evaluated;

            std::fill(left.begin(), left.end(), 0.0);
            right = counts;
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                left[column[i].second] += 1.0;
                right[column[i].second] -= 1.0;
                if (!(column[i].first < column[i + 1].first)) continue;
                const double n_left = static_cast<double>(i + 1);
                Split candidate{true,
                                weighted_gini(left, n_left) + weighted_gini(right, static_cast<double>(n) - n_left),
                                f, column[i].first};
                if (better(candidate, best)) best = candidate;
            }
        }
        if (!best.found) continue;

        auto mid = std::stable_partition(work.begin() + static_cast<std::ptrdiff_t>(task.begin),
                                         work.begin() + static_cast<std::ptrdiff_t>(task.end),
                                         [&](std::size_t r) { return data.at(r, best.feature) <= best.threshold; });
        const std::size_t split_at = static_cast<std::size_t>(mid - work.begin());

        const auto left_id = static_cast<std::int32_t>(tree.nodes_.size());
        tree.nodes_.push_back({});
        const auto right_id = static_cast<std::int32_t>(tree.nodes_.size());
        tree.nodes_.push_back({});
        auto& node = tree.nodes_[task.node];
        node.feature = static_cast<std::int32_t>(best.feature);
        node.threshold = best.threshold;
        node.left = left_id;
        node.right = right_id;
        stack.push_back({right_id, split_at, task.end, task.depth + 1});
        stack.push_back({left_id, task.begin, split_at, task.depth + 1});
    }
    return tree;
}

std::size_t DecisionTree::predict(std::span<const double> x) const {
    std::size_t i = 0;
    while (nodes_[i].feature >= 0) {
        const auto& node = nodes_[i];
        i = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                                                  : node.right);
    }
    return nodes_[i].prediction;
}

std::size_t DecisionTree::depth() const {
    std::vector<std::size_t> d(nodes_.size(), 0);
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        deepest = std::max(deepest, d[i]);
        if (nodes_[i].feature >= 0) {
            d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
            d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
        }
    }
    return deepest;
}

nlohmann::json DecisionTree::to_json() const {
    std::vector<std::int32_t> feature, left, right;
    std::vector<double> threshold;
    std::vector<std::uint32_t> prediction;
    for (const auto& n : nodes_) {
        feature.push_back(n.feature);
        threshold.push_back(n.threshold);
        left.push_back(n.left);
        right.push_back(n.right);
        prediction.push_back(n.prediction);
    }
    return {{"feature", feature}, {"threshold", threshold}, {"left", left}, {"right", right},
            {"prediction", prediction}};
}

DecisionTree DecisionTree::from_json(const nlohmann::json& j) {
    const auto feature = j.at("feature").get<std::vector<std::int32_t>>();
    const auto threshold = j.at("threshold").get<std::vector<double>>();
    const auto left = j.at("left").get<std::vector<std::int32_t>>();
    const auto right = j.at("right").get<std::vector<std::int32_t>>();
    const auto prediction = j.at("prediction").get<std::vector<std::uint32_t>>();
    const std::size_t n = feature.size();
    if (threshold.size() != n || left.size() != n || right.size() != n || prediction.size() != n || n == 0) {
        throw SchemaError("decision tree arrays differ in length");
    }
    DecisionTree t;
    for (std::size_t i = 0; i < n; ++i) {
        if (feature[i] >= 0 && (left[i] <= static_cast<std::int32_t>(i) || right[i] <= static_cast<std::int32_t>(i) ||
                                left[i] >= static_cast<std::int32_t>(n) || right[i] >= static_cast<std::int32_t>(n))) {
            throw SchemaError("decision tree child index out of range");
        }
        t.nodes_.push_back({feature[i], threshold[i], left[i], right[i], prediction[i]});
    }
    return t;
}

}  // namespace pf
