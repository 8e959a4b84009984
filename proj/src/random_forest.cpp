#include "pf/random_forest.hpp"

#include <cmath>
#include <numeric>

#include "pf/parallel.hpp"

namespace pf {

RandomForest RandomForest::fit(const Dataset& data, const ForestParams& params, std::uint64_t seed,
                               std::size_t workers) {
    data.validate_for_training();
    if (params.n_trees == 0) throw ValidationError("random forest needs at least one tree");
    RandomForest forest;
    forest.params_ = params;
    forest.seed_ = seed;
    forest.n_features_ = data.cols;
    forest.n_classes_ = data.n_classes;
    forest.trees_.resize(params.n_trees);

    TreeParams tree_params;
    tree_params.max_features = params.max_features
                                   ? params.max_features
                                   : std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(
                                                                  std::sqrt(static_cast<double>(data.cols)))));
    tree_params.max_depth = params.max_depth;
    tree_params.min_samples_split = params.min_samples_split;

    parallel_for(params.n_trees, workers, [&](std::size_t t) {
        Rng rng(mix_seed(seed, t));
        std::vector<std::size_t> samples(data.rows);
        if (params.bootstrap) {
            for (auto& s : samples) s = static_cast<std::size_t>(rng.below(data.rows));
        } else {
            std::iota(samples.begin(), samples.end(), std::size_t{0});
        }
        forest.trees_[t] = DecisionTree::fit(data, samples, tree_params, rng);
    });
    return forest;
}

std::size_t RandomForest::predict(std::span<const double> x) const {
    std::vector<std::size_t> votes(n_classes_, 0);
    for (const auto& tree : trees_) ++votes[tree.predict(x)];
    std::size_t best = 0;
    for (std::size_t k = 1; k < votes.size(); ++k) {
        if (votes[k] > votes[best]) best = k;
    }
    return best;
}

std::vector<std::size_t> RandomForest::predict(const Dataset& data) const {
    std::vector<std::size_t> out(data.rows);
    for (std::size_t r = 0; r < data.rows; ++r) out[r] = predict(data.row(r));
    return out;
}

nlohmann::json RandomForest::to_json() const {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : trees_) trees.push_back(t.to_json());
    return {{"format", "pf.random_forest"},
            {"version", 1},
            {"seed", seed_},
            {"params",
             {{"n_trees", params_.n_trees},
              {"max_features", params_.max_features},
              {"bootstrap", params_.bootstrap},
              {"max_depth", params_.max_depth},
              {"min_samples_split", params_.min_samples_split},
              {"criterion", "gini"}}},
            {"n_features", n_features_},
            {"n_classes", n_classes_},
            {"trees", trees}};
}

RandomForest RandomForest::from_json(const nlohmann::json& j) {
    try {
        if (j.at("format") != "pf.random_forest" || j.at("version") != 1) {
            throw SchemaError("unsupported random forest container");
        }
        RandomForest f;
        f.seed_ = j.at("seed").get<std::uint64_t>();
        const auto& p = j.at("params");
        f.params_.n_trees = p.at("n_trees").get<std::size_t>();
        f.params_.max_features = p.at("max_features").get<std::size_t>();
        f.params_.bootstrap = p.at("bootstrap").get<bool>();
        f.params_.max_depth = p.at("max_depth").get<std::size_t>();
        f.params_.min_samples_split = p.at("min_samples_split").get<std::size_t>();
        f.n_features_ = j.at("n_features").get<std::size_t>();
        f.n_classes_ = j.at("n_classes").get<std::size_t>();
        for (const auto& t : j.at("trees")) f.trees_.push_back(DecisionTree::from_json(t));
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad random forest: ") + e.what());
    }
}

}  // namespace pf
