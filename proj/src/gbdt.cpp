#include "pf/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pf/parallel.hpp"

namespace pf {

namespace {

constexpr double kMinHessian = 1e-16;
constexpr double kMinGain = 1e-10;

void softmax_row(std::span<const double> z, std::span<double> p) {
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        p[k] = std::exp(z[k] - m);
        sum += p[k];
    }
    for (auto& v : p) v /= sum;
}

struct SplitChoice {
    double gain = 0.0;
    std::size_t feature = 0;
    double threshold = 0.0;
    bool found = false;
};

double score(double g, double h, double lambda) { return g * g / (h + lambda); }

// Grows one tree on (grad, hess) with the level-wise exact greedy algorithm.
RegressionTree grow_tree(const Dataset& data, const std::vector<std::vector<std::uint32_t>>& sorted,
                         std::span<const double> grad, std::span<const double> hess, const GbdtParams& params,
                         std::vector<std::uint32_t>& node_of) {
    RegressionTree tree;
    auto& nodes = tree.nodes();
    const std::size_t n = data.rows;
    std::fill(node_of.begin(), node_of.end(), 0u);
    nodes.push_back({});

    std::vector<double> G(1, 0.0), H(1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        G[0] += grad[i];
        H[0] += hess[i];
    }
    std::vector<std::uint32_t> frontier = {0};

    for (std::size_t depth = 0; depth < params.max_depth && !frontier.empty(); ++depth) {
        const std::size_t n_nodes = nodes.size();
        std::vector<char> active(n_nodes, 0);
        for (auto id : frontier) active[id] = 1;
        std::vector<SplitChoice> best(n_nodes);
        std::vector<double> gl(n_nodes), hl(n_nodes), last(n_nodes);
        std::vector<char> seen(n_nodes);

        for (std::size_t f = 0; f < data.cols; ++f) {
            for (auto id : frontier) {
                gl[id] = hl[id] = 0.0;
                seen[id] = 0;
            }
            for (std::uint32_t i : sorted[f]) {
                const std::uint32_t id = node_of[i];
                if (!active[id]) continue;
                const double v = data.at(i, f);
                if (seen[id] && v > last[id]) {
                    const double gr = G[id] - gl[id];
                    const double hr = H[id] - hl[id];
                    if (hl[id] >= params.min_child_weight && hr >= params.min_child_weight) {
                        const double gain = 0.5 * (score(gl[id], hl[id], params.lambda) +
                                                   score(gr, hr, params.lambda) -
                                                   score(G[id], H[id], params.lambda)) -
                                            params.gamma;
                        if (!best[id].found || gain > best[id].gain) best[id] = {gain, f, last[id], true};
                    }
                }
                gl[id] += grad[i];
                hl[id] += hess[i];
                last[id] = v;
                seen[id] = 1;
            }
        }

        std::vector<std::uint32_t> next;
        std::vector<std::int32_t> left_of(n_nodes, -1);
        for (auto id : frontier) {
            if (!best[id].found || best[id].gain <= kMinGain) continue;
            const auto left = static_cast<std::int32_t>(nodes.size());
            nodes.push_back({});
            nodes.push_back({});
            nodes[id].feature = static_cast<std::int32_t>(best[id].feature);
            nodes[id].threshold = best[id].threshold;
            nodes[id].left = left;
            nodes[id].right = left + 1;
            left_of[id] = left;
            next.push_back(static_cast<std::uint32_t>(left));
            next.push_back(static_cast<std::uint32_t>(left + 1));
        }
        G.resize(nodes.size(), 0.0);
        H.resize(nodes.size(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t id = node_of[i];
            if (id >= n_nodes || left_of[id] < 0) continue;
            const auto& node = nodes[id];
            const auto child = static_cast<std::uint32_t>(
                data.at(i, static_cast<std::size_t>(node.feature)) <= node.threshold ? node.left : node.right);
            node_of[i] = child;
            G[child] += grad[i];
            H[child] += hess[i];
        }
        frontier = std::move(next);
    }

    for (std::size_t id = 0; id < nodes.size(); ++id) {
        if (nodes[id].feature < 0) nodes[id].value = -params.learning_rate * G[id] / (H[id] + params.lambda);
    }
    return tree;
}

}  // namespace

double RegressionTree::predict(std::span<const double> x) const {
    std::size_t i = 0;
    while (nodes_[i].feature >= 0) {
        const auto& node = nodes_[i];
        i = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                                                  : node.right);
    }
    return nodes_[i].value;
}

nlohmann::json RegressionTree::to_json() const {
    std::vector<std::int32_t> feature, left, right;
    std::vector<double> threshold, value;
    for (const auto& n : nodes_) {
        feature.push_back(n.feature);
        threshold.push_back(n.threshold);
        left.push_back(n.left);
        right.push_back(n.right);
        value.push_back(n.value);
    }
    return {{"feature", feature}, {"threshold", threshold}, {"left", left}, {"right", right}, {"value", value}};
}

RegressionTree RegressionTree::from_json(const nlohmann::json& j) {
    const auto feature = j.at("feature").get<std::vector<std::int32_t>>();
    const auto threshold = j.at("threshold").get<std::vector<double>>();
    const auto left = j.at("left").get<std::vector<std::int32_t>>();
    const auto right = j.at("right").get<std::vector<std::int32_t>>();
    const auto value = j.at("value").get<std::vector<double>>();
    const std::size_t n = feature.size();
    if (n == 0 || threshold.size() != n || left.size() != n || right.size() != n || value.size() != n) {
        throw SchemaError("regression tree arrays differ in length");
    }
    RegressionTree t;
    for (std::size_t i = 0; i < n; ++i) {
        if (feature[i] >= 0 && (left[i] <= static_cast<std::int32_t>(i) || right[i] <= static_cast<std::int32_t>(i) ||
                                left[i] >= static_cast<std::int32_t>(n) || right[i] >= static_cast<std::int32_t>(n))) {
            throw SchemaError("regression tree child index out of range");
        }
        t.nodes_.push_back({feature[i], threshold[i], left[i], right[i], value[i]});
    }
    return t;
}

double multiclass_log_loss(std::span<const double> scores, std::span<const std::size_t> labels,
                           std::size_t n_classes) {
    std::vector<double> p(n_classes);
    double loss = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        softmax_row(scores.subspan(i * n_classes, n_classes), p);
        loss -= std::log(std::max(p[labels[i]], 1e-300));
    }
    return loss / static_cast<double>(labels.size());
}

Gbdt Gbdt::fit(const Dataset& data, const GbdtParams& params, std::uint64_t seed, std::size_t workers,
               std::vector<double>* loss_trace) {
    data.validate_for_training();
    const std::size_t n = data.rows;
    const std::size_t K = data.n_classes;

    Gbdt model;
    model.params_ = params;
    model.seed_ = seed;
    model.n_features_ = data.cols;
    model.n_classes_ = K;

    std::vector<double> prior(K, 0.0);
    for (auto l : data.labels) prior[l] += 1.0;
    model.base_.resize(K);
    for (std::size_t k = 0; k < K; ++k) model.base_[k] = std::log(std::max(prior[k] / static_cast<double>(n), 1e-12));

    std::vector<std::vector<std::uint32_t>> sorted(data.cols);
    parallel_for(data.cols, workers, [&](std::size_t f) {
        auto& order = sorted[f];
        order.resize(n);
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return data.at(a, f) < data.at(b, f); });
    });

    std::vector<double> scores(n * K);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < K; ++k) scores[i * K + k] = model.base_[k];
    }
    std::vector<double> prob(n * K);
    std::vector<std::vector<double>> grad(K, std::vector<double>(n)), hess(K, std::vector<double>(n));
    std::vector<std::vector<std::uint32_t>> node_of(K, std::vector<std::uint32_t>(n));

    if (loss_trace) loss_trace->push_back(multiclass_log_loss(scores, data.labels, K));
    for (std::size_t round = 0; round < params.rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            softmax_row(std::span<const double>(scores).subspan(i * K, K), std::span(prob).subspan(i * K, K));
        }
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                const double p = prob[i * K + k];
                grad[k][i] = p - (data.labels[i] == k ? 1.0 : 0.0);
                hess[k][i] = std::max(2.0 * p * (1.0 - p), kMinHessian);
            }
        }
        std::vector<RegressionTree> round_trees(K);
        parallel_for(K, workers, [&](std::size_t k) {
            round_trees[k] = grow_tree(data, sorted, grad[k], hess[k], params, node_of[k]);
        });
        for (std::size_t k = 0; k < K; ++k) {
            const auto& nodes = round_trees[k].nodes();
            for (std::size_t i = 0; i < n; ++i) scores[i * K + k] += nodes[node_of[k][i]].value;
            model.trees_.push_back(std::move(round_trees[k]));
        }
        if (loss_trace) loss_trace->push_back(multiclass_log_loss(scores, data.labels, K));
    }
    return model;
}

std::vector<double> Gbdt::predict_raw(std::span<const double> x) const {
    std::vector<double> z = base_;
    for (std::size_t t = 0; t < trees_.size(); ++t) z[t % n_classes_] += trees_[t].predict(x);
    return z;
}

std::vector<double> Gbdt::predict_proba(std::span<const double> x) const {
    const auto z = predict_raw(x);
    std::vector<double> p(z.size());
    softmax_row(z, p);
    return p;
}

std::size_t Gbdt::predict(std::span<const double> x) const {
    const auto z = predict_raw(x);
    return static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
}

std::vector<std::size_t> Gbdt::predict(const Dataset& data) const {
    std::vector<std::size_t> out(data.rows);
    for (std::size_t r = 0; r < data.rows; ++r) out[r] = predict(data.row(r));
    return out;
}

nlohmann::json Gbdt::to_json() const {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : trees_) trees.push_back(t.to_json());
    return {{"format", "pf.gbdt"},
            {"version", 1},
            {"seed", seed_},
            {"params",
             {{"rounds", params_.rounds},
              {"max_depth", params_.max_depth},
              {"learning_rate", params_.learning_rate},
              {"lambda", params_.lambda},
              {"gamma", params_.gamma},
              {"min_child_weight", params_.min_child_weight},
              {"objective", "softmax"}}},
            {"n_features", n_features_},
            {"n_classes", n_classes_},
            {"base_scores", base_},
            {"trees", trees}};
}

Gbdt Gbdt::from_json(const nlohmann::json& j) {
    try {
        if (j.at("format") != "pf.gbdt" || j.at("version") != 1) throw SchemaError("unsupported gbdt container");
        Gbdt g;
        g.seed_ = j.at("seed").get<std::uint64_t>();
        const auto& p = j.at("params");
        g.params_.rounds = p.at("rounds").get<std::size_t>();
        g.params_.max_depth = p.at("max_depth").get<std::size_t>();
        g.params_.learning_rate = p.at("learning_rate").get<double>();
        g.params_.lambda = p.at("lambda").get<double>();
        g.params_.gamma = p.at("gamma").get<double>();
        g.params_.min_child_weight = p.at("min_child_weight").get<double>();
        g.n_features_ = j.at("n_features").get<std::size_t>();
        g.n_classes_ = j.at("n_classes").get<std::size_t>();
        g.base_ = j.at("base_scores").get<std::vector<double>>();
        for (const auto& t : j.at("trees")) g.trees_.push_back(RegressionTree::from_json(t));
        if (g.base_.size() != g.n_classes_ || g.trees_.size() % std::max<std::size_t>(g.n_classes_, 1) != 0) {
            throw SchemaError("gbdt container is inconsistent");
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad gbdt: ") + e.what());
    }
}

}  // namespace pf
