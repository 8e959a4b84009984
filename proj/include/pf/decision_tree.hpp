#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "pf/dataset.hpp"
#include "pf/rng.hpp"

namespace pf {

struct TreeParams {
    std::size_t max_features = 0;  // 0 = all features
    std::size_t max_depth = 0;     // 0 = unlimited
    std::size_t min_samples_split = 2;
};

/// CART classification tree with Gini impurity.
///
/// A split sends `x[feature] <= threshold` left, where the threshold is the
/// lower of two adjacent distinct training values. At each node features are
/// visited in a random order until `max_features` non-constant ones have been
/// evaluated (more are drawn while only constant ones turn up). The best split
/// has the lowest weighted Gini; ties go to the lower feature index, then the
/// lower threshold. Leaves predict their majority class, lowest index on ties.
class DecisionTree {
public:
    struct Node {
        std::int32_t feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::uint32_t prediction = 0;
    };

    /// `samples` lists training rows, repeated rows allowed (bootstrap).
    static DecisionTree fit(const Dataset& data, std::span<const std::size_t> samples, const TreeParams& params,
                            Rng& rng);

    std::size_t predict(std::span<const double> x) const;
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::size_t depth() const;

    nlohmann::json to_json() const;
    static DecisionTree from_json(const nlohmann::json& j);

private:
    std::vector<Node> nodes_;
};

}  // namespace pf
