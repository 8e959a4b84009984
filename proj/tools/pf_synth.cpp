// pf-synth: writes a synthetic four-class corpus, matching word vectors and a
// ready-to-run config for the pf pipeline.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pf/corpus.hpp"
#include "pf/error.hpp"
#include "pf/report.hpp"
#include "pf/synth.hpp"

#ifndef PF_DEFAULT_LISTS_DIR
#define PF_DEFAULT_LISTS_DIR "data/lists"
#endif

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"pf-synth: generate a synthetic labeled corpus with planted class signal"};
    pf::SynthParams p;
    std::string out;
    std::size_t train_per_class = 800;
    std::size_t test_per_class = 200;
    std::uint64_t run_seed = 7;
    app.add_option("--out", out, "Directory to write users.jsonl, vectors.txt, config.ini, planted.json")->required();
    app.add_option("--users-per-class", p.users_per_class, "Eligible users per class");
    app.add_option("--seed", p.seed, "Generator seed");
    app.add_option("--dim", p.dim, "Word-vector dimension");
    app.add_option("--style-noise", p.style_noise, "Fraction of users whose tweets follow another class");
    app.add_option("--min-tweets", p.min_tweets, "Minimum English tweets per user");
    app.add_option("--max-tweets", p.max_tweets, "Maximum English tweets per user");
    app.add_option("--min-english-tweets", p.min_english_tweets,
                   "sampling.min_english_tweets written to config.ini; ineligible users fall one short");
    std::string lists = fs::absolute(PF_DEFAULT_LISTS_DIR).lexically_normal().string();
    app.add_option("--lists", lists, "paths.lists written to config.ini");
    app.add_option("--train-per-class", train_per_class, "sampling.train_per_class written to config.ini");
    app.add_option("--test-per-class", test_per_class, "sampling.test_per_class written to config.ini");
    app.add_option("--run-seed", run_seed, "run.seed written to config.ini");
    CLI11_PARSE(app, argc, argv);

    try {
        if (p.max_tweets < p.min_tweets) throw pf::ValidationError("--max-tweets is below --min-tweets");
        if (p.min_english_tweets == 0 || p.min_tweets < p.min_english_tweets) {
            throw pf::ValidationError("--min-tweets must reach --min-english-tweets, which must be positive");
        }
        const auto corpus = pf::generate_corpus(p);
        const fs::path dir(out);
        fs::create_directories(dir);
        pf::write_corpus(dir / "users.jsonl", corpus.users);
        corpus.vectors.save(dir / "vectors.txt");

        std::string cfg;
        cfg += "# Generated by pf-synth (generator seed " + std::to_string(p.seed) + ")\n";
        cfg += "[run]\nseed = " + std::to_string(run_seed) + "\n\n";
        cfg += "[paths]\ncorpus = users.jsonl\nword_vectors = vectors.txt\n";
        cfg += "lists = " + lists + "\n";
        cfg += "output = out\n\n";
        cfg += "[sampling]\ntrain_per_class = " + std::to_string(train_per_class) +
               "\ntest_per_class = " + std::to_string(test_per_class) +
               "\nmin_english_tweets = " + std::to_string(p.min_english_tweets) + "\n";
        pf::write_text_file(dir / "config.ini", cfg);

        nlohmann::json planted = {{"seed", p.seed}, {"users_per_class", p.users_per_class}, {"style_noise", p.style_noise}};
        for (auto c : pf::kAllClasses) {
            const auto k = pf::class_index(c);
            planted["professions"][std::string(pf::class_name(c))] = corpus.professions[k];
            planted["hashtags"][std::string(pf::class_name(c))] = corpus.class_hashtags[k];
            planted["count_scale"][std::string(pf::class_name(c))] = corpus.count_scale[k];
        }
        pf::write_text_file(dir / "planted.json", planted.dump(2) + "\n");
        std::cerr << nlohmann::json{{"level", "info"}, {"event", "synth.done"}, {"users", corpus.users.size()}}.dump()
                  << '\n';
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"level", "error"}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }
    return 0;
}
