#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include <doctest.h>

#include "pf/error.hpp"
#include "pf/random_forest.hpp"
#include "pf/rng.hpp"

namespace {

/// Exhaustive CART with exact rational impurity comparison.
struct OracleNode {
    int feature = -1;
    double threshold = 0.0;
    std::size_t prediction = 0;
    std::unique_ptr<OracleNode> left, right;
};

std::unique_ptr<OracleNode> oracle_fit(const pf::Dataset& d, const std::vector<std::size_t>& rows) {
    auto node = std::make_unique<OracleNode>();
    std::vector<std::int64_t> counts(d.n_classes, 0);
    for (auto r : rows) ++counts[d.labels[r]];
    node->prediction = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    if (std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1 || rows.size() < 2) return node;

    // Minimizing weighted Gini = maximizing sumsq(L)/nL + sumsq(R)/nR, compared as fractions.
    bool found = false;
    std::int64_t best_num = 0, best_den = 1;
    int best_f = -1;
    double best_t = 0;
    for (std::size_t f = 0; f < d.cols; ++f) {
        std::vector<double> values;
        for (auto r : rows) values.push_back(d.at(r, f));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
            const double t = values[i];
            std::vector<std::int64_t> l(d.n_classes, 0), r(d.n_classes, 0);
            for (auto row : rows) (d.at(row, f) <= t ? l : r)[d.labels[row]]++;
            std::int64_t nl = 0, nr = 0, sl = 0, sr = 0;
            for (std::size_t k = 0; k < d.n_classes; ++k) {
                nl += l[k];
                nr += r[k];
                sl += l[k] * l[k];
                sr += r[k] * r[k];
            }
            const std::int64_t num = sl * nr + sr * nl, den = nl * nr;
            if (!found || num * best_den > best_num * den) {
                found = true;
                best_num = num;
                best_den = den;
                best_f = static_cast<int>(f);
                best_t = t;
            }
        }
    }
    if (!found) return node;
    node->feature = best_f;
    node->threshold = best_t;
    std::vector<std::size_t> lrows, rrows;
    for (auto r : rows) (d.at(r, best_f) <= best_t ? lrows : rrows).push_back(r);
    node->left = oracle_fit(d, lrows);
    node->right = oracle_fit(d, rrows);
    return node;
}

std::size_t oracle_predict(const OracleNode& n, std::span<const double> x) {
    if (n.feature < 0) return n.prediction;
    return oracle_predict(x[n.feature] <= n.threshold ? *n.left : *n.right, x);
}

pf::Dataset blobs(std::size_t n, std::size_t dims, std::uint64_t seed) {
    pf::Rng rng(seed);
    pf::Dataset d(0, 0, 4);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = i % 4;
        std::vector<double> x(dims);
        for (std::size_t j = 0; j < dims; ++j) x[j] = rng.normal() + (j % 4 == c ? 4.0 : 0.0);
        d.push_row(x, c);
    }
    return d;
}

}  // namespace

TEST_CASE("a single full tree equals an exhaustive CART oracle") {
    pf::Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        pf::Dataset d(0, 0, 4);
        for (int i = 0; i < 10; ++i) {
            const std::vector<double> x = {static_cast<double>(rng.below(5)), static_cast<double>(rng.below(5)),
                                           static_cast<double>(rng.below(3))};
            d.push_row(x, rng.below(4));
        }
        std::vector<std::size_t> rows(10);
        for (std::size_t i = 0; i < 10; ++i) rows[i] = i;
        if (std::all_of(d.labels.begin(), d.labels.end(), [&](auto l) { return l == d.labels[0]; })) continue;
        const auto oracle = oracle_fit(d, rows);

        pf::ForestParams params;
        params.n_trees = 1;
        params.bootstrap = false;
        params.max_features = 3;
        const auto forest = pf::RandomForest::fit(d, params, static_cast<std::uint64_t>(trial));
        for (double a = -0.5; a <= 5.0; a += 0.5) {
            for (double b = -0.5; b <= 5.0; b += 0.5) {
                for (double c = -0.5; c <= 3.0; c += 0.5) {
                    const std::vector<double> x = {a, b, c};
                    REQUIRE(forest.predict(x) == oracle_predict(*oracle, x));
                }
            }
        }
    }
}

TEST_CASE("unlimited-depth forest memorizes a separable 200-point set") {
    const auto d = blobs(200, 8, 3);
    const auto forest = pf::RandomForest::fit(d, {}, 9);
    CHECK(forest.trees().size() == 100);
    std::size_t correct = 0;
    const auto pred = forest.predict(d);
    for (std::size_t i = 0; i < d.rows; ++i) correct += pred[i] == d.labels[i];
    CHECK(correct == 200);
}

TEST_CASE("forest is deterministic across runs and worker counts") {
    const auto d = blobs(120, 10, 4);
    pf::ForestParams params;
    params.n_trees = 25;
    const auto a = pf::RandomForest::fit(d, params, 77, 1);
    const auto b = pf::RandomForest::fit(d, params, 77, 1);
    const auto c = pf::RandomForest::fit(d, params, 77, 4);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_json() == c.to_json());
    CHECK_FALSE(a.to_json() == pf::RandomForest::fit(d, params, 78, 1).to_json());
}

TEST_CASE("predictions are invariant under strictly increasing feature transforms") {
    const auto d = blobs(100, 5, 6);
    auto t = d;
    for (auto& v : t.values) v = std::exp(v) * 3.0 + 1.0;
    pf::ForestParams params;
    params.n_trees = 15;
    const auto fa = pf::RandomForest::fit(d, params, 5);
    const auto fb = pf::RandomForest::fit(t, params, 5);
    const auto probe = blobs(80, 5, 99);
    for (std::size_t i = 0; i < probe.rows; ++i) {
        auto x = std::vector<double>(probe.row(i).begin(), probe.row(i).end());
        const auto p = fa.predict(x);
        for (auto& v : x) v = std::exp(v) * 3.0 + 1.0;
        REQUIRE(fb.predict(x) == p);
    }
    for (std::size_t i = 0; i < d.rows; ++i) REQUIRE(fa.predict(d.row(i)) == fb.predict(t.row(i)));
}

TEST_CASE("forest errors and serialization") {
    pf::Dataset single(0, 0, 4);
    single.push_row(std::vector<double>{1.0}, 2);
    single.push_row(std::vector<double>{2.0}, 2);
    CHECK_THROWS_AS(pf::RandomForest::fit(single, {}, 1), pf::ValidationError);

    const auto d = blobs(60, 4, 8);
    pf::ForestParams params;
    params.n_trees = 7;
    const auto f = pf::RandomForest::fit(d, params, 3);
    const auto back = pf::RandomForest::from_json(f.to_json());
    CHECK(back.to_json() == f.to_json());
    CHECK(back.predict(d) == f.predict(d));
}
