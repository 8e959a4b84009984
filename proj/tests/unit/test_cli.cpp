#include <algorithm>
#include <filesystem>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "test_support.hpp"

namespace fs = std::filesystem;
using pf::testing::quoted;
using pf::testing::read_file;
using pf::testing::run_command;
using pf::testing::TempDir;
using pf::testing::write_file;

namespace {

const std::string kCli = PF_CLI;

fs::path sample_dir() { return pf::testing::data_dir() / "sample"; }

/// A config equivalent to the sample one, with absolute inputs and `extra` appended.
fs::path sample_config(const TempDir& dir, const std::string& corpus = "", const std::string& extra = "") {
    std::string text = read_file(sample_dir() / "config.ini");
    const auto replace = [&](const std::string& from, const std::string& to) {
        const auto at = text.find(from);
        REQUIRE(at != std::string::npos);
        text.replace(at, from.size(), to);
    };
    replace("corpus = users.jsonl", "corpus = " + (corpus.empty() ? (sample_dir() / "users.jsonl").string() : corpus));
    replace("word_vectors = vectors.txt", "word_vectors = " + (sample_dir() / "vectors.txt").string());
    replace("lists = ../lists", "lists = " + pf::testing::lists_dir().string());
    const auto path = dir.path() / "config.ini";
    write_file(path, text + extra);
    return path;
}

std::string pf_cmd(const fs::path& config, const fs::path& out, const std::string& args) {
    return kCli + " --config " + quoted(config) + " --out " + quoted(out) + " " + args;
}

}  // namespace

TEST_CASE("help and usage errors") {
    const auto help = run_command(kCli + " --help");
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("Exit status") != std::string::npos);
    CHECK(help.output.find("PF_SEED") != std::string::npos);
    CHECK(run_command(kCli + " ablate --help").exit_code == 0);

    const auto bad = run_command(kCli + " --no-such-flag ingest");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("\"exit_code\":2") != std::string::npos);
    CHECK(run_command(kCli).exit_code == 2);
    CHECK(run_command(kCli + " frobnicate").exit_code == 2);
    CHECK(run_command(kCli + " --seed notanumber ingest").exit_code == 2);
}

TEST_CASE("configuration errors exit 3") {
    TempDir dir;
    CHECK(run_command("env -u PF_CONFIG " + kCli + " ingest").exit_code == 3);
    CHECK(run_command(kCli + " --config " + quoted(dir / "missing.ini") + " ingest").exit_code == 3);

    write_file(dir / "noseed.ini", "[paths]\ncorpus = x.jsonl\n");
    const auto noseed = run_command("env -u PF_SEED " + kCli + " --config " + quoted(dir / "noseed.ini") + " ingest");
    CHECK(noseed.exit_code == 3);
    CHECK(noseed.output.find("seed") != std::string::npos);

    const auto cfg = sample_config(dir, (dir / "absent.jsonl").string());
    CHECK(run_command(pf_cmd(cfg, dir / "out", "ingest")).exit_code == 3);

    TempDir dir2;
    const auto bad_preset = sample_config(dir2, "", "\n[ablation]\npresets = all, wo-tweets\n");
    CHECK(run_command(pf_cmd(bad_preset, dir2 / "out", "ingest")).exit_code == 0);
    CHECK(run_command(pf_cmd(bad_preset, dir2 / "out", "ablate")).exit_code == 3);
}

TEST_CASE("malformed corpus exits 5 with the line number") {
    TempDir dir;
    const std::string users = read_file(sample_dir() / "users.jsonl");
    const auto first_end = users.find('\n');
    write_file(dir / "bad.jsonl", users.substr(0, first_end + 1) + "{\"user_id\": \"x\", \"tweets\": [\n" +
                                      users.substr(first_end + 1));
    const auto cfg = sample_config(dir, (dir / "bad.jsonl").string());
    const auto r = run_command(pf_cmd(cfg, dir / "out", "ingest"));
    CHECK(r.exit_code == 5);
    CHECK(r.output.find("\"line\":2") != std::string::npos);
}

TEST_CASE("stages before their inputs exit 4") {
    TempDir dir;
    const auto cfg = sample_config(dir);
    for (const char* stage : {"featurize", "embed-train", "train", "ablate", "analyze", "report"}) {
        INFO(stage);
        CHECK(run_command(pf_cmd(cfg, dir / "out", stage)).exit_code == 4);
    }
}

TEST_CASE("seed precedence is flag over environment over config") {
    TempDir dir;
    const auto cfg = sample_config(dir);
    auto seed_of = [&](const std::string& prefix, const std::string& args, const std::string& out) {
        const auto r = run_command(prefix + pf_cmd(cfg, dir / out, args));
        REQUIRE(r.exit_code == 0);
        return nlohmann::json::parse(read_file(dir / (out + "/corpus/ingest.json"))).at("seed").get<std::uint64_t>();
    };
    CHECK(seed_of("env -u PF_SEED ", "ingest", "a") == 7);
    CHECK(seed_of("PF_SEED=11 ", "ingest", "b") == 11);
    CHECK(seed_of("PF_SEED=11 ", "--seed 23 ingest", "c") == 23);
    // A different seed gives a different split.
    CHECK(read_file(dir / "a/corpus/split.json") != read_file(dir / "c/corpus/split.json"));

    const auto r = run_command("PF_OUT=" + quoted(dir / "envout") + " " + kCli + " --config " + quoted(cfg) + " ingest");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "envout/corpus/split.json"));
}

TEST_CASE("the sample pipeline runs end to end, idempotently, without touching inputs") {
    TempDir dir;
    const auto cfg = sample_config(dir);
    const std::string users_before = read_file(sample_dir() / "users.jsonl");
    const std::string vectors_before = read_file(sample_dir() / "vectors.txt");

    for (const char* out : {"run1", "run2"}) {
        for (const char* stage : {"ingest", "ablate", "analyze", "report"}) {
            INFO(out << " " << stage);
            const auto r = run_command(pf_cmd(cfg, dir / out, std::string("--workers 2 ") + stage));
            REQUIRE(r.exit_code == 0);
        }
    }
    const auto csv = read_file(dir / "run1/tables/ablation.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 19);
    for (const char* rel : {"corpus/split.json", "corpus/users.jsonl", "features/users.jsonl", "embedders/url.json",
                            "tables/ablation.csv", "analysis/analysis.json", "report.md", "tables/professions.csv"}) {
        INFO(rel);
        CHECK(read_file(dir / (std::string("run1/") + rel)) == read_file(dir / (std::string("run2/") + rel)));
    }
    const auto report = nlohmann::json::parse(read_file(dir / "run1/ablation/report.json"));
    CHECK(report.at("rows").size() == 18);
    CHECK(report.at("seed") == 7);

    // Re-running a stage in place overwrites with identical content.
    REQUIRE(run_command(pf_cmd(cfg, dir / "run1", "ablate")).exit_code == 0);
    CHECK(read_file(dir / "run1/tables/ablation.csv") == csv);

    CHECK(read_file(sample_dir() / "users.jsonl") == users_before);
    CHECK(read_file(sample_dir() / "vectors.txt") == vectors_before);
}

TEST_CASE("individual stages and model files") {
    TempDir dir;
    const auto cfg = sample_config(dir, "", "\n[train]\nconfig = only-tweets\n");
    for (const char* stage : {"ingest", "featurize", "embed-train", "train"}) {
        INFO(stage);
        REQUIRE(run_command(pf_cmd(cfg, dir / "out", stage)).exit_code == 0);
    }
    CHECK(fs::exists(dir / "out/features/manifest.json"));
    CHECK(fs::exists(dir / "out/embedders/hashtag.json"));
    CHECK(fs::exists(dir / "out/models/native/only-tweets-rfc.json"));
    CHECK(fs::exists(dir / "out/models/native/only-tweets-gbdt.json"));
    const auto metrics = read_file(dir / "out/models/metrics.csv");
    CHECK(metrics.rfind("encoder,classifier,config,f1,accuracy\n", 0) == 0);
}
