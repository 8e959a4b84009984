#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "pf/error.hpp"
#include "pf/readability.hpp"
#include "pf/rng.hpp"
#include "readability_fixture.hpp"
#include "test_support.hpp"

namespace {

struct Lists {
    pf::WordList dale{pf::WordList::load(pf::testing::lists_dir() / "dale_familiar.txt")};
    pf::WordList spache{pf::WordList::load(pf::testing::lists_dir() / "spache_familiar.txt")};
    pf::FamiliarLists refs() const { return {&dale, &spache}; }
};

const Lists& lists() {
    static const Lists l;
    return l;
}

pf::UserRecord user_with(std::vector<std::string> tweets) {
    pf::UserRecord u;
    u.user_id = "u";
    u.tweets = std::move(tweets);
    return u;
}

}  // namespace

TEST_CASE("single-sentence hand example") {
    // W=6, S=1, Y=6, L=17.
    const auto r = pf::compute_readability("The cat sat on the mat.", lists().refs());
    CHECK(r.flesch == doctest::Approx(206.835 - 1.015 * 6 - 84.6 * 1).epsilon(1e-12));
    CHECK(std::abs(r.flesch - 116.145) < 1e-9);
    CHECK(std::abs(r.ari - (4.71 * 17.0 / 6.0 + 0.5 * 6.0 - 21.43)) < 1e-9);
    CHECK(std::abs(r.ari - (-5.085)) < 1e-9);
    CHECK(std::abs(r.flesch_kincaid - (0.39 * 6 + 11.8 - 15.59)) < 1e-9);
}

TEST_CASE("twenty-sentence fixture matches hand counts for all eight metrics") {
    const pf::WordList dale(pf::testing::kFixtureDale), spache(pf::testing::kFixtureSpache);
    const pf::FamiliarLists fl{&dale, &spache};
    const auto text = pf::testing::fixture_text();
    const auto stats = pf::text_stats(text, fl);
    const pf::testing::FixtureCounts c;
    CHECK(stats.words == 105);
    CHECK(stats.sentences == 20);
    CHECK(stats.syllables == 183);
    CHECK(stats.letters == 531);
    CHECK(stats.complex_words == 23);
    CHECK(stats.dale_unfamiliar == 72);
    CHECK(stats.spache_unfamiliar == 86);
    CHECK(stats.easy_words == 82);
    CHECK(stats.hard_words == 23);
    const auto got = pf::compute_readability(text, fl).as_array();
    const auto want = pf::testing::hand_scores(c);
    for (std::size_t i = 0; i < 8; ++i) {
        INFO(pf::ReadabilityScores::kNames[i]);
        CHECK(std::abs(got[i] - want[i]) < 1e-9);
    }
}

TEST_CASE("linsear write switches branch above r = 20") {
    pf::TextStats s;
    s.words = 10;
    s.sentences = 1;
    s.syllables = 30;
    s.letters = 50;
    s.easy_words = 2;
    s.hard_words = 8;  // r = 2 + 24 = 26
    CHECK(pf::scores_from_stats(s).linsear_write == doctest::Approx(13.0));
    s.hard_words = 6;
    s.easy_words = 2;  // r = 20 -> r/2 - 1
    CHECK(pf::scores_from_stats(s).linsear_write == doctest::Approx(9.0));
}

TEST_CASE("dale-chall adds its adjustment only above five percent unfamiliar") {
    pf::TextStats s;
    s.words = 100;
    s.sentences = 10;
    s.syllables = 120;
    s.letters = 400;
    s.dale_unfamiliar = 5;
    CHECK(pf::scores_from_stats(s).dale_chall == doctest::Approx(0.1579 * 5 + 0.0496 * 10));
    s.dale_unfamiliar = 6;
    CHECK(pf::scores_from_stats(s).dale_chall == doctest::Approx(0.1579 * 6 + 0.0496 * 10 + 3.6365));
}

TEST_CASE("flesch falls and flesch-kincaid rises as syllables grow") {
    pf::TextStats s;
    s.words = 20;
    s.sentences = 3;
    s.letters = 90;
    double prev_f = INFINITY, prev_fk = -INFINITY;
    for (std::size_t y = 20; y < 80; ++y) {
        s.syllables = y;
        const auto r = pf::scores_from_stats(s);
        REQUIRE(r.flesch < prev_f);
        REQUIRE(r.flesch_kincaid > prev_fk);
        prev_f = r.flesch;
        prev_fk = r.flesch_kincaid;
    }
}

TEST_CASE("all scores are finite for random texts") {
    pf::Rng rng(5);
    const std::vector<std::string> words = {"a", "banana", "extraordinary", "cat", "the", "i'm", "x", "rhythm"};
    for (int trial = 0; trial < 300; ++trial) {
        std::string t;
        const auto n = 1 + rng.below(30);
        for (std::uint64_t i = 0; i < n; ++i) {
            t += words[rng.below(words.size())];
            t += rng.below(5) == 0 ? ". " : " ";
        }
        for (double v : pf::compute_readability(t, lists().refs()).as_array()) REQUIRE(std::isfinite(v));
    }
}

TEST_CASE("errors: empty text and missing lists") {
    CHECK_THROWS_AS(pf::compute_readability("", lists().refs()), pf::ValidationError);
    CHECK_THROWS_AS(pf::compute_readability("...", lists().refs()), pf::ValidationError);
    try {
        pf::compute_readability("hi.", {nullptr, &lists().spache});
        FAIL("expected a config error");
    } catch (const pf::ConfigError& e) {
        CHECK(std::string(e.what()).find("dale") != std::string::npos);
    }
    try {
        pf::compute_readability("hi.", {&lists().dale, nullptr});
        FAIL("expected a config error");
    } catch (const pf::ConfigError& e) {
        CHECK(std::string(e.what()).find("spache") != std::string::npos);
    }
}

TEST_CASE("user_readability averages per tweet") {
    const std::string t = "The cat sat on the mat.";
    const auto single = pf::compute_readability(t, lists().refs()).as_array();
    const auto twice = pf::user_readability(user_with({t, t}), lists().refs()).as_array();
    for (std::size_t i = 0; i < 8; ++i) CHECK(twice[i] == doctest::Approx(single[i]).epsilon(1e-12));

    const std::string u = "Computers calculate numbers very quickly!";
    const auto a = pf::compute_readability(t, lists().refs()).as_array();
    const auto b = pf::compute_readability(pf::normalize(u), lists().refs()).as_array();
    const auto mean = pf::user_readability(user_with({t, u, "#only @entities https://x.y"}), lists().refs()).as_array();
    for (std::size_t i = 0; i < 8; ++i) CHECK(mean[i] == doctest::Approx((a[i] + b[i]) / 2.0).epsilon(1e-12));

    CHECK_THROWS_AS(pf::user_readability(user_with({"#tag", "\xF0\x9F\x8E\x89"}), lists().refs()), pf::ValidationError);
}

TEST_CASE("user_readability is invariant under tweet permutation") {
    pf::Rng rng(8);
    std::vector<std::string> tweets = {"I loved it. So much!", "Computers calculate numbers very quickly.",
                                       "Elephants are enormous animals", "go go go", "What a wonderful day!"};
    const auto base = pf::user_readability(user_with(tweets), lists().refs()).as_array();
    for (int trial = 0; trial < 20; ++trial) {
        rng.shuffle(std::span(tweets));
        const auto got = pf::user_readability(user_with(tweets), lists().refs()).as_array();
        for (std::size_t i = 0; i < 8; ++i) REQUIRE(got[i] == doctest::Approx(base[i]).epsilon(1e-12));
    }
}
