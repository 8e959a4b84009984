#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "pf/dataset.hpp"
#include "pf/decision_tree.hpp"

namespace pf {

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t max_features = 0;  // 0 = floor(sqrt(d))
    bool bootstrap = true;
    std::size_t max_depth = 0;     // 0 = unlimited
    std::size_t min_samples_split = 2;
};

/// Bagged Gini trees with majority vote (lowest class index on ties).
///
/// Tree t draws everything (bootstrap sample, then feature order at each
/// node) from Rng(mix_seed(seed, t)), so trees may be grown on any number of
/// worker threads without changing the model.
class RandomForest {
public:
    static RandomForest fit(const Dataset& data, const ForestParams& params, std::uint64_t seed,
                            std::size_t workers = 1);

    std::size_t predict(std::span<const double> x) const;
    std::vector<std::size_t> predict(const Dataset& data) const;

    const std::vector<DecisionTree>& trees() const noexcept { return trees_; }
    std::size_t n_classes() const noexcept { return n_classes_; }

    nlohmann::json to_json() const;
    static RandomForest from_json(const nlohmann::json& j);

private:
    ForestParams params_;
    std::uint64_t seed_ = 0;
    std::size_t n_features_ = 0;
    std::size_t n_classes_ = 0;
    std::vector<DecisionTree> trees_;
};

}  // namespace pf
