// pf: command-line pipeline from a labeled microblog corpus to feature
// ablation results and analysis tables.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pf/ablation.hpp"
#include "pf/analysis.hpp"
#include "pf/config.hpp"
#include "pf/corpus.hpp"
#include "pf/error.hpp"
#include "pf/features.hpp"
#include "pf/lexicon.hpp"
#include "pf/parallel.hpp"
#include "pf/readability.hpp"
#include "pf/report.hpp"
#include "pf/textproc.hpp"
#include "pf/word_vectors.hpp"

#ifndef PF_DEFAULT_LISTS_DIR
#define PF_DEFAULT_LISTS_DIR "data/lists"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode : int {
    kOk = 0,
    kUnexpected = 1,
    kUsage = 2,
    kConfig = 3,
    kMissingArtifact = 4,
    kSchema = 5,
    kValidation = 6,
    kIo = 7,
};

constexpr const char* kExitHelp = R"(Exit status:
  0  success
  1  unexpected internal error
  2  usage error (bad flags or command)
  3  configuration error (missing key, bad value, missing input file or list)
  4  missing upstream artifact (run the earlier stage first)
  5  schema error in an input or artifact file (message carries the line number)
  6  validation error (data violates a precondition, e.g. a class with no users)
  7  I/O error (unreadable or unwritable file)

Environment (overridden by flags, override the config file):
  PF_CONFIG   config file path          PF_SEED     master seed
  PF_WORKERS  worker threads (0 = all)  PF_OUT      output directory

Failures print one JSON line to stderr: {"level":"error","exit_code":N,"error":KIND,"message":...}.)";

void log_event(std::string_view level, std::string_view event, json fields = json::object()) {
    json line = {{"level", level}, {"event", event}, {"ts", pf::utc_timestamp()}};
    for (auto it = fields.begin(); it != fields.end(); ++it) line[it.key()] = it.value();
    std::cerr << line.dump() << '\n';
}

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
}

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::string out;
};

// Effective settings after flag > environment > config precedence.
struct Context {
    pf::IniConfig cfg;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    fs::path out;

    fs::path artifact(const std::string& rel) const { return out / rel; }

    fs::path input_path(std::string_view section, std::string_view key) const {
        auto p = cfg.require_path(section, key);
        if (!fs::exists(p)) {
            throw pf::ConfigError(std::string(section) + "." + std::string(key) + ": file not found: " + p.string());
        }
        return p;
    }

    // A list file from [paths], falling back to <lists dir>/<default_name>.
    fs::path list_path(std::string_view key, std::string_view default_name) const {
        fs::path p;
        if (auto explicit_path = cfg.get_path("paths", key)) {
            p = *explicit_path;
        } else {
            fs::path dir = cfg.get_path("paths", "lists").value_or(fs::path(PF_DEFAULT_LISTS_DIR));
            p = dir / default_name;
        }
        if (!fs::exists(p)) {
            throw pf::ConfigError("list '" + std::string(key) + "' not found: " + p.string());
        }
        return p;
    }
};

Context make_context(const Options& opt) {
    std::string config_path = opt.config;
    if (config_path.empty()) config_path = env("PF_CONFIG").value_or("");
    if (config_path.empty()) throw pf::ConfigError("no config file given (use --config or PF_CONFIG)");
    if (!fs::exists(config_path)) throw pf::ConfigError("config file not found: " + config_path);

    Context ctx{pf::IniConfig::load(config_path), 0, 1, {}};
    if (opt.seed) {
        ctx.seed = *opt.seed;
    } else if (auto s = env("PF_SEED")) {
        ctx.seed = pf::parse_uint(*s, "PF_SEED");
    } else if (auto s = ctx.cfg.get("run", "seed")) {
        ctx.seed = pf::parse_uint(*s, "run.seed");
    } else {
        throw pf::ConfigError("missing config key 'run.seed' (a seed is mandatory)");
    }

    std::size_t workers = 0;
    if (opt.workers) {
        workers = *opt.workers;
    } else if (auto w = env("PF_WORKERS")) {
        workers = pf::parse_uint(*w, "PF_WORKERS");
    } else {
        workers = ctx.cfg.get_uint("run", "workers", 0);
    }
    ctx.workers = pf::resolve_workers(workers);

    if (!opt.out.empty()) {
        ctx.out = opt.out;
    } else if (auto o = env("PF_OUT")) {
        ctx.out = *o;
    } else {
        ctx.out = ctx.cfg.require_path("paths", "output");
    }
    fs::create_directories(ctx.out);
    return ctx;
}

json read_json(const fs::path& path, std::string_view what) {
    std::ifstream in(path);
    if (!in) throw pf::MissingArtifactError(std::string(what) + " not found: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw pf::SchemaError("bad " + std::string(what) + " " + path.string() + ": " + e.what());
    }
}

void write_json(const fs::path& path, const json& j) { pf::write_text_file(path, j.dump(2) + "\n"); }

// --- stage helpers -----------------------------------------------------------

struct Lists {
    pf::WordList dale;
    pf::WordList spache;
    pf::Lexicon lexicon;
};

Lists load_lists(const Context& ctx) {
    Lists l;
    l.dale = pf::WordList::load(ctx.list_path("dale", "dale_familiar.txt"));
    l.spache = pf::WordList::load(ctx.list_path("spache", "spache_familiar.txt"));
    l.lexicon = pf::Lexicon::load(ctx.list_path("lexicon", "lexicon.tsv"));
    return l;
}

struct SplitFeatures {
    std::vector<pf::UserFeatures> train;
    std::vector<pf::UserFeatures> test;
};

std::vector<pf::UserRecord> split_records(const Context& ctx, pf::SplitIds* ids_out = nullptr) {
    const auto users_path = ctx.artifact("corpus/users.jsonl");
    if (!fs::exists(users_path)) throw pf::MissingArtifactError("corpus not ingested: " + users_path.string());
    const auto ids = pf::read_split_manifest(ctx.artifact("corpus/split.json"));
    auto records = pf::read_corpus(users_path);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < records.size(); ++i) index[records[i].user_id] = i;
    std::vector<pf::UserRecord> out;
    for (const auto* side : {&ids.train, &ids.test}) {
        for (const auto& id : *side) {
            auto it = index.find(id);
            if (it == index.end()) throw pf::SchemaError("split manifest names unknown user '" + id + "'");
            out.push_back(records[it->second]);
        }
    }
    if (ids_out) *ids_out = ids;
    return out;
}

SplitFeatures featurize(const Context& ctx) {
    pf::SplitIds ids;
    const auto records = split_records(ctx, &ids);
    const Lists lists = load_lists(ctx);
    std::optional<pf::WordVectorTable> vectors;
    if (ctx.cfg.has("paths", "word_vectors")) vectors = pf::WordVectorTable::load(ctx.input_path("paths", "word_vectors"));

    pf::FeatureResources res;
    res.word_vectors = vectors ? &*vectors : nullptr;
    res.lexicon = &lists.lexicon;
    res.familiar = {&lists.dale, &lists.spache};

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<pf::UserFeatures> features(records.size());
    pf::parallel_for(records.size(), ctx.workers,
                     [&](std::size_t i) { features[i] = pf::extract_user_features(records[i], res); });

    SplitFeatures out;
    std::ostringstream lines;
    for (std::size_t i = 0; i < features.size(); ++i) {
        const bool is_train = i < ids.train.size();
        json j = features[i].to_json();
        j["split"] = is_train ? "train" : "test";
        lines << j.dump() << '\n';
        (is_train ? out.train : out.test).push_back(std::move(features[i]));
    }
    pf::write_text_file(ctx.artifact("features/users.jsonl"), lines.str());
    write_json(ctx.artifact("features/manifest.json"),
               {{"seed", ctx.seed},
                {"n_train", out.train.size()},
                {"n_test", out.test.size()},
                {"text_encoding_dim", vectors ? vectors->dim() : 0},
                {"lexicon_categories", lists.lexicon.size()}});
    log_event("info", "featurize.done",
              {{"users", records.size()},
               {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}});
    return out;
}

SplitFeatures read_features(const Context& ctx) {
    const auto path = ctx.artifact("features/users.jsonl");
    std::ifstream in(path);
    if (!in) throw pf::MissingArtifactError("features not computed: " + path.string());
    SplitFeatures out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            auto f = pf::UserFeatures::from_json(j);
            (j.at("split") == "train" ? out.train : out.test).push_back(std::move(f));
        } catch (const json::exception& e) {
            throw pf::SchemaError(path.string() + ": " + e.what(), line_no);
        }
    }
    return out;
}

pf::EmbedderParams embedder_params(const pf::IniConfig& cfg) {
    pf::EmbedderParams p;
    p.hidden = cfg.get_uint("embedder", "hidden", p.hidden);
    p.epochs = cfg.get_uint("embedder", "epochs", p.epochs);
    p.batch_size = cfg.get_uint("embedder", "batch_size", p.batch_size);
    p.learning_rate = cfg.get_double("embedder", "learning_rate", p.learning_rate);
    return p;
}

pf::EntityEmbedderSet embed_train(const Context& ctx, const SplitFeatures& features) {
    const double min_df = ctx.cfg.get_double("features", "min_df", 0.02);
    const auto t0 = std::chrono::steady_clock::now();
    auto set = pf::train_entity_embedders(features.train, min_df, embedder_params(ctx.cfg), ctx.seed);
    set.url.save(ctx.artifact("embedders/url.json"));
    set.hashtag.save(ctx.artifact("embedders/hashtag.json"));
    set.mention.save(ctx.artifact("embedders/mention.json"));
    log_event("info", "embed-train.done",
              {{"vocabulary",
                {{"url", set.url.tfidf.vocabulary().size()},
                 {"hashtag", set.hashtag.tfidf.vocabulary().size()},
                 {"mention", set.mention.tfidf.vocabulary().size()}}},
               {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}});
    return set;
}

pf::EntityEmbedderSet load_embedders(const Context& ctx) {
    return {pf::EntityEmbedder::load(ctx.artifact("embedders/url.json")),
            pf::EntityEmbedder::load(ctx.artifact("embedders/hashtag.json")),
            pf::EntityEmbedder::load(ctx.artifact("embedders/mention.json"))};
}

// Owns external encodings so FeatureArtifacts can point into them.
struct EncoderStore {
    std::map<std::string, pf::EncodingMap> maps;
    std::vector<pf::FeatureArtifacts> artifacts;
};

void build_encoders(const Context& ctx, const SplitFeatures& features, const pf::EntityEmbedderSet& embedders,
                    EncoderStore& store) {
    auto with_embedders = [&](pf::EncoderSource src) {
        return pf::FeatureArtifacts{std::move(src), &embedders.url, &embedders.hashtag, &embedders.mention};
    };
    const bool native = !features.train.empty() && !features.train.front().tweets_encoding.empty();
    if (native) store.artifacts.push_back(with_embedders({}));
    for (const auto& section : ctx.cfg.sections_with_prefix("encoder.")) {
        const std::string name = section.substr(8);
        const std::size_t dim = ctx.cfg.get_uint(section, "dim", 0);
        if (dim == 0) throw pf::ConfigError(section + ".dim: must be a positive integer");
        store.maps[name + "/tweets"] = pf::import_external_encodings(ctx.input_path(section, "tweets"), dim);
        store.maps[name + "/description"] = pf::import_external_encodings(ctx.input_path(section, "description"), dim);
    }
    for (const auto& section : ctx.cfg.sections_with_prefix("encoder.")) {
        const std::string name = section.substr(8);
        store.artifacts.push_back(with_embedders({name, &store.maps[name + "/tweets"], &store.maps[name + "/description"]}));
    }
    if (store.artifacts.empty()) {
        throw pf::ConfigError("no text encoder: set paths.word_vectors or add an [encoder.NAME] section");
    }
}

pf::ClassifierParams classifier_params(const pf::IniConfig& cfg) {
    pf::ClassifierParams p;
    p.forest.n_trees = cfg.get_uint("rfc", "n_trees", p.forest.n_trees);
    p.forest.max_depth = cfg.get_uint("rfc", "max_depth", p.forest.max_depth);
    p.forest.max_features = cfg.get_uint("rfc", "max_features", p.forest.max_features);
    p.gbdt.rounds = cfg.get_uint("gbdt", "rounds", p.gbdt.rounds);
    p.gbdt.max_depth = cfg.get_uint("gbdt", "max_depth", p.gbdt.max_depth);
    p.gbdt.learning_rate = cfg.get_double("gbdt", "learning_rate", p.gbdt.learning_rate);
    p.gbdt.lambda = cfg.get_double("gbdt", "lambda", p.gbdt.lambda);
    return p;
}

std::vector<pf::ClassifierKind> classifiers(const pf::IniConfig& cfg) {
    std::vector<pf::ClassifierKind> out;
    for (const auto& name : cfg.get_list("ablation", "classifiers", {"rfc", "gbdt"})) {
        out.push_back(pf::parse_classifier(name));
    }
    return out;
}

std::vector<pf::AblationConfig> presets(const pf::IniConfig& cfg, std::string_view section, std::string_view key,
                                        std::vector<std::string> fallback) {
    std::vector<pf::AblationConfig> out;
    for (const auto& name : cfg.get_list(section, key, std::move(fallback))) out.push_back(pf::find_preset(name));
    return out;
}

std::vector<std::string> all_preset_names() {
    std::vector<std::string> names;
    for (const auto& p : pf::ablation_presets()) names.push_back(p.name);
    return names;
}

void log_dropped(const pf::AblationReport& report) {
    for (const auto& [encoder, n] : report.dropped_train) {
        if (n || report.dropped_test.at(encoder)) {
            log_event("warn", "encoder.missing_users",
                      {{"encoder", encoder}, {"train", n}, {"test", report.dropped_test.at(encoder)}});
        }
    }
}

// --- commands ----------------------------------------------------------------

void cmd_ingest(const Context& ctx) {
    const auto corpus_path = ctx.input_path("paths", "corpus");
    const std::size_t min_english = ctx.cfg.get_uint("sampling", "min_english_tweets", 100);
    const std::size_t n_train = ctx.cfg.get_uint("sampling", "train_per_class", 4000);
    const std::size_t n_test = ctx.cfg.get_uint("sampling", "test_per_class", 1000);

    auto users = pf::read_corpus(corpus_path);
    const std::size_t read = users.size();
    std::size_t unlabeled = 0, ambiguous = 0;
    std::vector<pf::UserRecord> labeled;
    for (auto& u : users) {
        const auto r = pf::resolve_label(u);
        if (r.status == pf::LabelStatus::Found) {
            u.label = r.type;
            labeled.push_back(std::move(u));
        } else if (r.status == pf::LabelStatus::Ambiguous) {
            ++ambiguous;
        } else {
            ++unlabeled;
        }
    }
    const pf::EnglishDetector detector(pf::WordList::load(ctx.list_path("english_common", "english_common.txt")));
    const std::size_t n_labeled = labeled.size();
    auto eligible = pf::filter_eligible(std::move(labeled), detector, min_english);
    const auto split = pf::balanced_split(eligible, n_train, n_test, ctx.seed);
    for (const auto& w : split.warnings) log_event("warn", "split.short_class", {{"message", w}});

    fs::create_directories(ctx.artifact("corpus"));
    pf::write_corpus(ctx.artifact("corpus/users.jsonl"), eligible);
    write_json(ctx.artifact("corpus/split.json"), pf::split_manifest(split));
    json class_counts = json::object();
    for (auto c : pf::kAllClasses) class_counts[std::string(pf::class_name(c))] = 0;
    for (const auto& u : eligible) class_counts[std::string(pf::class_name(u.personality_class()))] =
        class_counts[std::string(pf::class_name(u.personality_class()))].get<std::size_t>() + 1;
    write_json(ctx.artifact("corpus/ingest.json"), {{"seed", ctx.seed},
                                                    {"users_read", read},
                                                    {"unlabeled", unlabeled},
                                                    {"ambiguous", ambiguous},
                                                    {"ineligible", n_labeled - eligible.size()},
                                                    {"eligible", eligible.size()},
                                                    {"eligible_per_class", class_counts},
                                                    {"min_english_tweets", min_english}});
    log_event("info", "ingest.done",
              {{"read", read}, {"eligible", eligible.size()}, {"ambiguous", ambiguous}, {"unlabeled", unlabeled},
               {"train", split.train.size()}, {"test", split.test.size()}});
}

void cmd_featurize(const Context& ctx) { featurize(ctx); }

void cmd_embed_train(const Context& ctx) { embed_train(ctx, read_features(ctx)); }

void write_ablation(const Context& ctx, const pf::AblationReport& report, const std::string& json_rel,
                    const std::string& csv_rel) {
    write_json(ctx.artifact(json_rel), report.to_json());
    pf::write_text_file(ctx.artifact(csv_rel), pf::ablation_csv(report));
}

void cmd_train(const Context& ctx) {
    const auto features = read_features(ctx);
    const auto embedders = load_embedders(ctx);
    EncoderStore store;
    build_encoders(ctx, features, embedders, store);
    const auto configs = presets(ctx.cfg, "train", "config", {"all"});
    const auto kinds = classifiers(ctx.cfg);
    pf::AblationInputs inputs{features.train, features.test, store.artifacts};
    const auto report = pf::run_ablation(inputs, configs, kinds, classifier_params(ctx.cfg), ctx.seed, ctx.workers,
                                         [&](const pf::AblationRow& row, const pf::Classifier& model) {
                                             json j = model.to_json();
                                             j["encoder"] = row.encoder;
                                             j["config"] = row.config;
                                             j["master_seed"] = ctx.seed;
                                             write_json(ctx.artifact("models/" + row.encoder + "/" + row.config + "-" +
                                                                     row.classifier + ".json"),
                                                        j);
                                         });
    log_dropped(report);
    write_ablation(ctx, report, "models/metrics.json", "models/metrics.csv");
    log_event("info", "train.done", {{"models", report.rows.size()}});
}

void cmd_ablate(const Context& ctx) {
    const auto features = featurize(ctx);
    const auto embedders = embed_train(ctx, features);
    EncoderStore store;
    build_encoders(ctx, features, embedders, store);
    const auto configs = presets(ctx.cfg, "ablation", "presets", all_preset_names());
    const auto kinds = classifiers(ctx.cfg);
    const bool save_models = ctx.cfg.get_bool("ablation", "save_models", false);
    pf::AblationInputs inputs{features.train, features.test, store.artifacts};
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = pf::run_ablation(
        inputs, configs, kinds, classifier_params(ctx.cfg), ctx.seed, ctx.workers,
        [&](const pf::AblationRow& row, const pf::Classifier& model) {
            log_event("info", "ablate.cell",
                      {{"encoder", row.encoder}, {"config", row.config}, {"classifier", row.classifier},
                       {"features", row.n_features}, {"f1", row.metrics.macro_f1}});
            if (save_models) {
                write_json(ctx.artifact("ablation/models/" + row.encoder + "/" + row.config + "-" + row.classifier +
                                        ".json"),
                           model.to_json());
            }
        });
    log_dropped(report);
    write_ablation(ctx, report, "ablation/report.json", "tables/ablation.csv");
    log_event("info", "ablate.done",
              {{"rows", report.rows.size()},
               {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}});
}

void cmd_analyze(const Context& ctx) {
    const auto records = split_records(ctx);
    const auto features = read_features(ctx);
    std::vector<const pf::UserFeatures*> all;
    for (const auto& f : features.train) all.push_back(&f);
    for (const auto& f : features.test) all.push_back(&f);
    if (all.size() != records.size()) throw pf::SchemaError("features do not match the split; rerun featurize");

    std::vector<std::string> descriptions;
    std::vector<pf::PersonalityClass> classes;
    std::vector<pf::ProfileCounts> counts;
    std::vector<pf::ReadabilityScores> readability;
    std::vector<std::vector<double>> empath;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].user_id != all[i]->user_id) throw pf::SchemaError("features are out of order; rerun featurize");
        descriptions.push_back(records[i].description);
        classes.push_back(records[i].personality_class());
        counts.push_back(records[i].counts);
        readability.push_back(all[i]->readability);
        empath.push_back(all[i]->empath);
    }
    const auto stopwords = pf::WordList::load(ctx.list_path("stopwords", "stopwords.txt"));
    const auto lexicon = pf::Lexicon::load(ctx.list_path("lexicon", "lexicon.tsv"));
    const auto names = lexicon.names();

    pf::AnalysisResults results;
    results.seed = ctx.seed;
    results.professions = pf::profession_scores(descriptions, classes, &stopwords,
                                                ctx.cfg.get_uint("analysis", "min_support", 20),
                                                ctx.cfg.get_uint("analysis", "top_k", 5));
    results.metadata = pf::metadata_stats(counts, classes);
    results.readability = pf::readability_table(readability, classes);
    results.empath = pf::distinct_categories(empath, classes, names, ctx.cfg.get_uint("analysis", "empath_top_k", 5));
    write_json(ctx.artifact("analysis/analysis.json"), results.to_json());
    log_event("info", "analyze.done", {{"users", records.size()}});
}

void cmd_report(const Context& ctx) {
    const auto analysis = pf::AnalysisResults::from_json(read_json(ctx.artifact("analysis/analysis.json"), "analysis"));
    std::optional<pf::AblationReport> ablation;
    if (fs::exists(ctx.artifact("ablation/report.json"))) {
        ablation = pf::AblationReport::from_json(read_json(ctx.artifact("ablation/report.json"), "ablation report"));
    }
    const auto written = pf::emit_report(ctx.out, analysis, ablation ? &*ablation : nullptr);
    log_event("info", "report.done", {{"files", written}});
}

int fail(int code, std::string_view kind, const std::string& message, std::size_t line = 0) {
    json j = {{"level", "error"}, {"exit_code", code}, {"error", kind}, {"message", message}};
    if (line) j["line"] = line;
    std::cerr << j.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pf: personality-class feature pipeline over archived microblog corpora"};
    app.footer(kExitHelp);
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config, "Run config file (INI-style; see README)");
    app.add_option("--seed", opt.seed, "Master seed; overrides PF_SEED and run.seed");
    app.add_option("--workers", opt.workers, "Worker threads, 0 = all cores; results do not depend on it");
    app.add_option("--out", opt.out, "Output directory; overrides PF_OUT and paths.output");

    struct Command {
        const char* name;
        const char* help;
        void (*run)(const Context&);
    };
    const Command commands[] = {
        {"ingest", "Resolve labels, filter eligible users, sample the balanced split", cmd_ingest},
        {"featurize", "Compute per-user features for the split", cmd_featurize},
        {"embed-train", "Train the URL, hashtag and mention embedders on the training split", cmd_embed_train},
        {"train", "Train classifiers for train.config (default: all) and save models", cmd_train},
        {"ablate", "Featurize, train embedders, then train and evaluate the preset grid", cmd_ablate},
        {"analyze", "Professions, metadata, readability and lexical-category analysis", cmd_analyze},
        {"report", "Write tables/, plots/ and report.md from analysis and ablation results", cmd_report},
    };
    for (const auto& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return fail(kUsage, "usage", e.what());
    }

    try {
        const Context ctx = make_context(opt);
        for (const auto& c : commands) {
            if (app.got_subcommand(c.name)) {
                log_event("info", std::string(c.name) + ".start",
                          {{"seed", ctx.seed}, {"workers", ctx.workers}, {"out", ctx.out.string()}});
                c.run(ctx);
            }
        }
        return kOk;
    } catch (const pf::ConfigError& e) {
        return fail(kConfig, "config", e.what());
    } catch (const pf::MissingArtifactError& e) {
        return fail(kMissingArtifact, "missing_artifact", e.what());
    } catch (const pf::SchemaError& e) {
        return fail(kSchema, "schema", e.what(), e.line());
    } catch (const pf::ValidationError& e) {
        return fail(kValidation, "validation", e.what());
    } catch (const pf::IoError& e) {
        return fail(kIo, "io", e.what());
    } catch (const fs::filesystem_error& e) {
        return fail(kIo, "io", e.what());
    } catch (const std::exception& e) {
        return fail(kUnexpected, "internal", e.what());
    }
}
