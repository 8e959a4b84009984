#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "pf/error.hpp"
#include "pf/rng.hpp"
#include "pf/word_vectors.hpp"
#include "test_support.hpp"

using pf::testing::TempDir;
using pf::testing::write_file;

TEST_CASE("load_word_vectors reads a well-formed file") {
    TempDir dir;
    write_file(dir / "v.txt", "2 3\ncat 1 2 3\ndog -0.5 0 1e-3\n");
    const auto t = pf::WordVectorTable::load(dir / "v.txt");
    CHECK(t.size() == 2);
    CHECK(t.dim() == 3);
    const auto dog = t.find("dog");
    REQUIRE(dog);
    CHECK((*dog)[0] == -0.5);
    CHECK((*dog)[2] == 1e-3);
    CHECK_FALSE(t.find("bird"));
}

TEST_CASE("load_word_vectors reports the failing line") {
    TempDir dir;
    auto expect_line = [&](const std::string& content, std::size_t line) {
        write_file(dir / "v.txt", content);
        try {
            pf::WordVectorTable::load(dir / "v.txt");
            FAIL("expected a schema error");
        } catch (const pf::SchemaError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_line("2 3\ncat 1 2 3\ndog 1 2\n", 3);
    expect_line("2 3\ncat 1 2 3\ncat 4 5 6\n", 3);
    expect_line("2 3\ncat 1 x 3\ndog 1 2 3\n", 2);
    expect_line("two three\n", 1);
    CHECK_THROWS_AS(pf::WordVectorTable::load(dir / "missing.txt"), pf::IoError);
}

TEST_CASE("word vectors survive a save/load round trip") {
    pf::Rng rng(2);
    pf::WordVectorTable t(5);
    for (int i = 0; i < 40; ++i) {
        std::vector<double> v(5);
        for (auto& x : v) x = rng.normal() * std::pow(10.0, static_cast<double>(rng.below(9)) - 4.0);
        t.add("tok" + std::to_string(i), v);
    }
    TempDir dir;
    t.save(dir / "v.txt");
    CHECK(pf::WordVectorTable::load(dir / "v.txt") == t);
}

TEST_CASE("encode_text_avg examples") {
    pf::WordVectorTable t(2);
    t.add("a", std::vector<double>{1.0, 2.0});
    t.add("b", std::vector<double>{3.0, -4.0});
    const std::vector<std::string> one = {"a"};
    CHECK(pf::encode_text_avg(one, t) == std::vector<double>{1.0, 2.0});
    const std::vector<std::string> oov = {"x", "y"};
    CHECK(pf::encode_text_avg(oov, t) == std::vector<double>{0.0, 0.0});
    const std::vector<std::string> mixed = {"a", "x", "b"};
    CHECK(pf::encode_text_avg(mixed, t) == std::vector<double>{2.0, -1.0});
    const std::vector<std::vector<std::string>> tweets = {{"a"}, {"b", "b"}, {"zzz"}};
    const auto avg = pf::encode_tweets_avg(tweets, t);
    CHECK(avg[0] == doctest::Approx((1.0 + 3.0 + 0.0) / 3.0));
    CHECK(avg[1] == doctest::Approx((2.0 - 4.0 + 0.0) / 3.0));
    CHECK(pf::encode_tweets_avg(std::vector<std::vector<std::string>>{}, t) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("encode_text_avg equals a brute-force sum over 100 random tokens") {
    pf::Rng rng(9);
    pf::WordVectorTable t(4);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 30; ++i) {
        std::vector<double> v(4);
        for (auto& x : v) x = rng.uniform(-1, 1);
        rows.push_back(v);
        t.add("w" + std::to_string(i), v);
    }
    std::vector<std::string> tokens;
    std::vector<double> sum(4, 0.0);
    std::size_t known = 0;
    for (int i = 0; i < 100; ++i) {
        const auto j = rng.below(40);
        tokens.push_back("w" + std::to_string(j));
        if (j < 30) {
            ++known;
            for (int d = 0; d < 4; ++d) sum[d] += rows[j][d];
        }
    }
    const auto got = pf::encode_text_avg(tokens, t);
    for (int d = 0; d < 4; ++d) CHECK(got[d] == doctest::Approx(sum[d] / static_cast<double>(known)).epsilon(1e-12));
}

TEST_CASE("external encodings: import, dimension errors, round trip") {
    TempDir dir;
    write_file(dir / "e.txt",
               "8\nu1 1 2 3 4 5 6 7 8\nu2 0 0 0 0 0 0 0 0\nu3 -1 -2 -3 -4 -5 -6 -7 -8\n");
    const auto m = pf::import_external_encodings(dir / "e.txt", 8);
    CHECK(m.size() == 3);
    CHECK(m.at("u3")[7] == -8.0);

    write_file(dir / "bad.txt", "8\nu1 1 2 3 4 5 6 7 8\nshort_user 1 2 3 4 5 6 7\n");
    try {
        pf::import_external_encodings(dir / "bad.txt", 8);
        FAIL("expected a validation error");
    } catch (const pf::ValidationError& e) {
        CHECK(std::string(e.what()).find("short_user") != std::string::npos);
    }
    CHECK_THROWS_AS(pf::import_external_encodings(dir / "e.txt", 7), pf::ValidationError);

    pf::Rng rng(1);
    pf::WordVectorTable t(3);
    for (int i = 0; i < 10; ++i) {
        t.add("w" + std::to_string(i), std::vector<double>{rng.normal(), rng.normal() / 3.0, rng.uniform()});
    }
    pf::EncodingMap native;
    for (int u = 0; u < 5; ++u) {
        std::vector<std::string> toks;
        for (int k = 0; k < 7; ++k) toks.push_back("w" + std::to_string(rng.below(12)));
        native["user" + std::to_string(u)] = pf::encode_text_avg(toks, t);
    }
    pf::export_encodings(dir / "native.txt", native, 3);
    CHECK(pf::import_external_encodings(dir / "native.txt", 3) == native);
}
