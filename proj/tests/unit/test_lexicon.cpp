#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "pf/error.hpp"
#include "pf/lexicon.hpp"
#include "pf/rng.hpp"
#include "test_support.hpp"

namespace {

pf::Lexicon toy_lexicon() {
    return pf::Lexicon({{"dance", {"dance", "ballet"}}, {"food", {"bread", "apple", "dance"}}, {"sky", {"cloud"}}});
}

double cosine(std::span<const double> a, std::span<const double> b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    return ab / std::sqrt(aa * bb);
}

}  // namespace

TEST_CASE("bundled lexicon has 194 unique categories") {
    const auto lex = pf::Lexicon::load(pf::testing::lists_dir() / "lexicon.tsv");
    CHECK(lex.size() == 194);
    const auto names = lex.names();
    CHECK(std::set<std::string>(names.begin(), names.end()).size() == 194);
    for (const auto& c : lex.categories()) CHECK_FALSE(c.terms.empty());
}

TEST_CASE("lexicon rejects duplicate names and malformed lines") {
    CHECK_THROWS_AS(pf::Lexicon({{"a", {"x"}}, {"a", {"y"}}}), pf::ValidationError);
    pf::testing::TempDir dir;
    pf::testing::write_file(dir.path() / "bad.tsv", "ok\tx y\nno-tab-here\n");
    try {
        pf::Lexicon::load(dir.path() / "bad.tsv");
        FAIL("expected a schema error");
    } catch (const pf::SchemaError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("score_categories examples") {
    const auto lex = toy_lexicon();
    const std::vector<std::string> dd = {"dance", "dance"};
    const auto s = lex.score(dd);
    CHECK(s == std::vector<double>{1.0, 1.0, 0.0});  // "dance" belongs to two categories

    const pf::Lexicon only_dance({{"dance", {"dance"}}, {"sky", {"cloud"}}});
    CHECK(only_dance.score(dd) == std::vector<double>{1.0, 0.0});

    const std::vector<std::string> none = {"zzz"};
    CHECK(lex.score(none) == std::vector<double>{0.0, 0.0, 0.0});
    CHECK_THROWS_AS(lex.score(std::vector<std::string>{}), pf::ValidationError);
}

TEST_CASE("score_categories equals a nested-loop count on 10k random tokens") {
    const auto lex = pf::Lexicon::load(pf::testing::lists_dir() / "lexicon.tsv");
    std::vector<std::string> pool = {"unknownword", "zzz"};
    for (const auto& c : lex.categories()) {
        for (const auto& t : c.terms) pool.push_back(t);
    }
    pf::Rng rng(11);
    std::vector<std::string> tokens;
    for (int i = 0; i < 10000; ++i) tokens.push_back(pool[rng.below(pool.size())]);

    const auto got = lex.score(tokens);
    REQUIRE(got.size() == lex.size());
    for (std::size_t i = 0; i < lex.size(); ++i) {
        std::size_t count = 0;
        for (const auto& tok : tokens) {
            for (const auto& term : lex.categories()[i].terms) count += (tok == term);
        }
        REQUIRE(got[i] == static_cast<double>(count) / 10000.0);
        REQUIRE(got[i] >= 0.0);
        REQUIRE(got[i] <= 1.0);
    }
}

TEST_CASE("score_categories is invariant under token permutation") {
    const auto lex = toy_lexicon();
    std::vector<std::string> tokens = {"dance", "bread", "x", "cloud", "apple", "ballet", "y", "dance"};
    const auto base = lex.score(tokens);
    pf::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        rng.shuffle(std::span(tokens));
        REQUIRE(lex.score(tokens) == base);
    }
}

TEST_CASE("expand_seeds examples") {
    pf::WordVectorTable table(3);
    const std::vector<double> x = {1, 2, 3}, y = {1, 2, 3}, z = {-1, 0, 2}, w = {3, 0, 0};
    table.add("x", x);
    table.add("y", y);
    table.add("z", z);
    table.add("w", w);
    CHECK(pf::expand_seeds({"x"}, table, 0) == std::set<std::string>{"x"});
    CHECK(pf::expand_seeds({"x"}, table, 1) == std::set<std::string>{"x", "y"});
    CHECK(pf::expand_seeds({"x"}, table, 10) == std::set<std::string>{"w", "x", "y", "z"});
    try {
        pf::expand_seeds({"x", "nope"}, table, 1);
        FAIL("expected a validation error");
    } catch (const pf::ValidationError& e) {
        CHECK(std::string(e.what()).find("nope") != std::string::npos);
    }
}

TEST_CASE("expand_seeds matches an exhaustive cosine ranking on 50 words") {
    pf::Rng rng(21);
    pf::WordVectorTable table(6);
    std::vector<std::string> words;
    for (int i = 0; i < 50; ++i) {
        std::vector<double> v(6);
        for (auto& e : v) e = rng.uniform(-1, 1);
        words.push_back("w" + std::to_string(i));
        table.add(words.back(), v);
    }
    for (int trial = 0; trial < 20; ++trial) {
        std::set<std::string> seeds;
        const auto n_seeds = 1 + rng.below(4);
        while (seeds.size() < n_seeds) seeds.insert(words[rng.below(words.size())]);
        const std::size_t k = rng.below(12);

        std::vector<std::pair<double, std::string>> ranked;
        for (const auto& w : words) {
            if (seeds.count(w)) continue;
            double sum = 0;
            for (const auto& s : seeds) sum += cosine(*table.find(w), *table.find(s));
            ranked.emplace_back(-sum / static_cast<double>(seeds.size()), w);
        }
        std::sort(ranked.begin(), ranked.end());
        std::set<std::string> want = seeds;
        for (std::size_t i = 0; i < k && i < ranked.size(); ++i) want.insert(ranked[i].second);

        const auto got = pf::expand_seeds(seeds, table, k);
        REQUIRE(got == want);
        REQUIRE(std::includes(got.begin(), got.end(), seeds.begin(), seeds.end()));
        REQUIRE(got.size() <= seeds.size() + k);
    }
}

TEST_CASE("distinct_categories examples") {
    const std::vector<std::string> names = {"a", "b", "c"};
    std::vector<std::vector<double>> scores;
    std::vector<pf::PersonalityClass> classes;
    for (std::size_t c = 0; c < 4; ++c) {
        for (int u = 0; u < 3; ++u) {
            // "c" is scored only by Sentinel users.
            scores.push_back({0.2, 0.2, c == 2 ? 0.5 : 0.0});
            classes.push_back(static_cast<pf::PersonalityClass>(c));
        }
    }
    const auto ranked = pf::distinct_categories(scores, classes, names, 3);
    CHECK(ranked[2].front().name == "c");
    CHECK(ranked[2].front().distinctiveness == doctest::Approx(0.5 / pf::kDistinctivenessEpsilon));
    for (std::size_t c : {0u, 1u, 3u}) {
        REQUIRE(ranked[c].size() == 3);
        CHECK(ranked[c][0].name == "a");
        CHECK(ranked[c][0].distinctiveness == doctest::Approx(1.0));
        CHECK(ranked[c][1].name == "b");
        CHECK(ranked[c][2].name == "c");
    }
}

TEST_CASE("distinct_categories rejects a class without users") {
    const std::vector<std::string> names = {"a"};
    const std::vector<std::vector<double>> scores = {{1.0}, {0.5}, {0.2}};
    const std::vector<pf::PersonalityClass> classes = {pf::PersonalityClass::Analyst, pf::PersonalityClass::Diplomat,
                                                       pf::PersonalityClass::Sentinel};
    CHECK_THROWS_AS(pf::distinct_categories(scores, classes, names, 1), pf::ValidationError);
}

TEST_CASE("distinct_categories ranking is invariant under positive scaling") {
    pf::Rng rng(4);
    std::vector<std::string> names;
    for (int i = 0; i < 12; ++i) names.push_back("cat" + std::to_string(i));
    std::vector<std::vector<double>> scores;
    std::vector<pf::PersonalityClass> classes;
    for (int u = 0; u < 60; ++u) {
        std::vector<double> s(names.size());
        for (auto& v : s) v = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
        scores.push_back(s);
        classes.push_back(static_cast<pf::PersonalityClass>(u % 4));
    }
    auto order = [&](const std::vector<std::vector<double>>& sc) {
        std::vector<std::vector<std::string>> out;
        for (const auto& list : pf::distinct_categories(sc, classes, names, 12)) {
            out.emplace_back();
            for (const auto& r : list) out.back().push_back(r.name);
        }
        return out;
    };
    const auto base = order(scores);
    for (double k : {0.5, 3.0, 17.25}) {
        auto scaled = scores;
        for (auto& s : scaled) {
            for (auto& v : s) v *= k;
        }
        CHECK(order(scaled) == base);
    }
}
