#include "pf/ablation.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "pf/error.hpp"
#include "pf/parallel.hpp"
#include "pf/rng.hpp"

namespace pf {

std::string_view classifier_name(ClassifierKind kind) noexcept {
    return kind == ClassifierKind::Rfc ? "rfc" : "gbdt";
}

ClassifierKind parse_classifier(std::string_view name) {
    if (name == "rfc") return ClassifierKind::Rfc;
    if (name == "gbdt") return ClassifierKind::Gbdt;
    throw ConfigError("unknown classifier '" + std::string(name) + "' (expected rfc or gbdt)");
}

std::uint64_t cell_seed(std::uint64_t seed, ClassifierKind kind) noexcept {
    return mix_seed(seed, stream_id(classifier_name(kind)));
}

Classifier Classifier::train(ClassifierKind kind, const Dataset& data, const ClassifierParams& params,
                             std::uint64_t seed, std::size_t workers) {
    Classifier c;
    if (kind == ClassifierKind::Rfc) {
        c.model_ = RandomForest::fit(data, params.forest, seed, workers);
    } else {
        c.model_ = Gbdt::fit(data, params.gbdt, seed, workers);
    }
    return c;
}

ClassifierKind Classifier::kind() const noexcept {
    return model_.index() == 0 ? ClassifierKind::Rfc : ClassifierKind::Gbdt;
}

std::size_t Classifier::predict(std::span<const double> x) const {
    return std::visit([&](const auto& m) { return m.predict(x); }, model_);
}

std::vector<std::size_t> Classifier::predict(const Dataset& data) const {
    return std::visit([&](const auto& m) { return m.predict(data); }, model_);
}

nlohmann::json Classifier::to_json() const {
    return std::visit([](const auto& m) { return m.to_json(); }, model_);
}

Classifier Classifier::from_json(const nlohmann::json& j) {
    Classifier c;
    const auto format = j.value("format", std::string());
    if (format == "pf.random_forest") {
        c.model_ = RandomForest::from_json(j);
    } else if (format == "pf.gbdt") {
        c.model_ = Gbdt::from_json(j);
    } else {
        throw SchemaError("unknown model format '" + format + "'");
    }
    return c;
}

EntityEmbedderSet train_entity_embedders(std::span<const UserFeatures> users, double min_df,
                                         const EmbedderParams& params, std::uint64_t seed) {
    std::vector<std::size_t> y;
    std::vector<std::vector<std::string>> url_docs, hashtag_docs, mention_docs;
    for (const auto& u : users) {
        y.push_back(class_index(u.personality));
        url_docs.push_back(u.urls);
        hashtag_docs.push_back(u.hashtags);
        mention_docs.push_back(u.mentions);
    }
    auto train = [&](const std::vector<std::vector<std::string>>& docs, std::string_view kind) {
        try {
            return train_entity_embedder(docs, y, min_df, params,
                                         mix_seed(seed, stream_id("embedder:" + std::string(kind))));
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(kind) + " embedder: " + e.what());
        }
    };
    return {train(url_docs, "url"), train(hashtag_docs, "hashtag"), train(mention_docs, "mention")};
}

Dataset build_dataset(std::span<const UserFeatures> users, const FeatureArtifacts& artifacts,
                      const AblationConfig& config, std::size_t workers, std::size_t* dropped,
                      std::vector<SegmentInfo>* layout) {
    std::vector<const UserFeatures*> kept;
    for (const auto& u : users) {
        if (artifacts.encoder.covers(u)) kept.push_back(&u);
    }
    if (dropped) *dropped = users.size() - kept.size();

    std::vector<FeatureVector> vectors(kept.size());
    parallel_for(kept.size(), workers,
                 [&](std::size_t i) { vectors[i] = assemble_features(*kept[i], artifacts, config); });

    Dataset data;
    data.n_classes = kNumClasses;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        data.push_row(vectors[i].values, class_index(kept[i]->personality));
    }
    if (layout && !vectors.empty()) *layout = vectors.front().layout;
    return data;
}

namespace {

template <class E>
[[noreturn]] void rethrow_annotated(const E& e, const std::string& cell) {
    throw E(cell + ": " + e.what());
}

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

nlohmann::json metrics_json(const Metrics& m) {
    return {{"macro_f1", m.macro_f1},
            {"accuracy", m.accuracy},
            {"per_class_f1", m.per_class_f1},
            {"confusion", m.confusion}};
}

}  // namespace

AblationReport run_ablation(const AblationInputs& inputs, std::span<const AblationConfig> configs,
                            std::span<const ClassifierKind> classifiers, const ClassifierParams& params,
                            std::uint64_t seed, std::size_t workers, const ModelSink& sink) {
    AblationReport report;
    report.seed = seed;
    report.started_at = utc_timestamp();
    for (const auto& artifacts : inputs.encoders) {
        const std::string& encoder = artifacts.encoder.name;
        for (const auto& config : configs) {
            std::size_t dropped_train = 0, dropped_test = 0;
            const Dataset train = build_dataset(inputs.train, artifacts, config, workers, &dropped_train);
            const Dataset test = build_dataset(inputs.test, artifacts, config, workers, &dropped_test);
            report.dropped_train[encoder] = dropped_train;
            report.dropped_test[encoder] = dropped_test;
            for (ClassifierKind kind : classifiers) {
                AblationRow row;
                row.encoder = encoder;
                row.classifier = std::string(classifier_name(kind));
                row.config = config.name;
                row.config_label = config.label;
                row.n_features = train.cols;
                row.n_train = train.rows;
                row.n_test = test.rows;
                row.seed = cell_seed(seed, kind);
                const std::string cell = "cell " + encoder + "/" + config.name + "/" + row.classifier;
                try {
                    if (test.rows == 0) throw ValidationError("test set is empty");
                    if (test.cols != train.cols) throw ValidationError("train and test widths differ");
                    const Classifier model = Classifier::train(kind, train, params, row.seed, workers);
                    row.metrics = evaluate(model.predict(test), test.labels);
                    if (sink) sink(row, model);
                } catch (const ValidationError& e) {
                    rethrow_annotated(e, cell);
                } catch (const ConfigError& e) {
                    rethrow_annotated(e, cell);
                }
                report.rows.push_back(std::move(row));
            }
        }
    }
    report.finished_at = utc_timestamp();
    return report;
}

nlohmann::json AblationReport::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : rows) {
        rows_json.push_back({{"encoder", r.encoder},
                             {"classifier", r.classifier},
                             {"config", r.config},
                             {"config_label", r.config_label},
                             {"n_features", r.n_features},
                             {"n_train", r.n_train},
                             {"n_test", r.n_test},
                             {"seed", r.seed},
                             {"metrics", metrics_json(r.metrics)}});
    }
    return {{"seed", seed},
            {"f1", "macro"},
            {"started_at", started_at},
            {"finished_at", finished_at},
            {"dropped_train", dropped_train},
            {"dropped_test", dropped_test},
            {"rows", rows_json}};
}

AblationReport AblationReport::from_json(const nlohmann::json& j) {
    try {
        AblationReport r;
        r.seed = j.at("seed").get<std::uint64_t>();
        r.started_at = j.value("started_at", std::string());
        r.finished_at = j.value("finished_at", std::string());
        r.dropped_train = j.value("dropped_train", std::map<std::string, std::size_t>());
        r.dropped_test = j.value("dropped_test", std::map<std::string, std::size_t>());
        for (const auto& row : j.at("rows")) {
            AblationRow a;
            a.encoder = row.at("encoder").get<std::string>();
            a.classifier = row.at("classifier").get<std::string>();
            a.config = row.at("config").get<std::string>();
            a.config_label = row.value("config_label", a.config);
            a.n_features = row.at("n_features").get<std::size_t>();
            a.n_train = row.at("n_train").get<std::size_t>();
            a.n_test = row.at("n_test").get<std::size_t>();
            a.seed = row.at("seed").get<std::uint64_t>();
            const auto& m = row.at("metrics");
            a.metrics.macro_f1 = m.at("macro_f1").get<double>();
            a.metrics.accuracy = m.at("accuracy").get<double>();
            a.metrics.per_class_f1 = m.at("per_class_f1").get<std::array<double, 4>>();
            a.metrics.confusion = m.at("confusion").get<std::array<std::array<std::size_t, 4>, 4>>();
            r.rows.push_back(std::move(a));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad ablation report: ") + e.what());
    }
}

std::string ablation_csv(const AblationReport& report) {
    std::ostringstream out;
    out << "encoder,classifier,config,f1,accuracy\n";
    for (const auto& r : report.rows) {
        out << r.encoder << ',' << r.classifier << ',' << r.config << ',' << fixed4(r.metrics.macro_f1) << ','
            << fixed4(r.metrics.accuracy) << '\n';
    }
    return out.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace pf
