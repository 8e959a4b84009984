#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "pf/dataset.hpp"

namespace pf {

struct GbdtParams {
    std::size_t rounds = 100;
    std::size_t max_depth = 6;
    double learning_rate = 0.3;
    double lambda = 1.0;            // L2 penalty on leaf weights
    double gamma = 0.0;             // minimum split gain
    double min_child_weight = 1.0;  // minimum hessian sum per child
};

/// Regression tree over gradient statistics; `x[feature] <= threshold` goes left.
class RegressionTree {
public:
    struct Node {
        std::int32_t feature = -1;
        double threshold = 0.0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        double value = 0.0;  // leaf output, learning rate already applied
    };

    double predict(std::span<const double> x) const;
    std::vector<Node>& nodes() noexcept { return nodes_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }

    nlohmann::json to_json() const;
    static RegressionTree from_json(const nlohmann::json& j);

private:
    std::vector<Node> nodes_;
};

/// Softmax gradient boosting with one tree per class per round.
///
/// Scores start at log class priors. Each round computes p = softmax(F),
/// gradients g = p - y and hessians h = max(2p(1-p), 1e-16) per class, grows
/// one depth-limited tree per class by exact greedy search over all distinct
/// thresholds (level-wise, gain = 1/2 [GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l)] - gamma),
/// and adds learning_rate * (-G / (H + lambda)) at the leaves. Split ties go to
/// the lower feature index, then the lower threshold. No sampling is done, so
/// the model depends on the seed only through what is recorded.
class Gbdt {
public:
    static Gbdt fit(const Dataset& data, const GbdtParams& params, std::uint64_t seed, std::size_t workers = 1,
                    std::vector<double>* loss_trace = nullptr);

    std::vector<double> predict_raw(std::span<const double> x) const;
    std::vector<double> predict_proba(std::span<const double> x) const;
    std::size_t predict(std::span<const double> x) const;
    std::vector<std::size_t> predict(const Dataset& data) const;

    const std::vector<double>& base_scores() const noexcept { return base_; }
    /// trees()[round * n_classes + class]
    const std::vector<RegressionTree>& trees() const noexcept { return trees_; }
    std::size_t n_classes() const noexcept { return n_classes_; }

    nlohmann::json to_json() const;
    static Gbdt from_json(const nlohmann::json& j);

private:
    GbdtParams params_;
    std::uint64_t seed_ = 0;
    std::size_t n_features_ = 0;
    std::size_t n_classes_ = 0;
    std::vector<double> base_;
    std::vector<RegressionTree> trees_;
};

/// Mean negative log-likelihood of `labels` under row-wise softmax of `scores` (rows x classes).
double multiclass_log_loss(std::span<const double> scores, std::span<const std::size_t> labels,
                           std::size_t n_classes);

}  // namespace pf
