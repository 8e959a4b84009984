#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pf/dataset.hpp"
#include "pf/features.hpp"
#include "pf/gbdt.hpp"
#include "pf/metrics.hpp"
#include "pf/random_forest.hpp"

namespace pf {

enum class ClassifierKind : std::uint8_t { Rfc, Gbdt };

std::string_view classifier_name(ClassifierKind kind) noexcept;  // "rfc" / "gbdt"
ClassifierKind parse_classifier(std::string_view name);          // ConfigError when unknown

struct ClassifierParams {
    ForestParams forest;
    GbdtParams gbdt;
};

/// Seed for one (classifier) cell. It does not depend on the configuration,
/// so every configuration sees the same random streams.
std::uint64_t cell_seed(std::uint64_t seed, ClassifierKind kind) noexcept;

class Classifier {
public:
    static Classifier train(ClassifierKind kind, const Dataset& data, const ClassifierParams& params,
                            std::uint64_t seed, std::size_t workers = 1);

    ClassifierKind kind() const noexcept;
    std::size_t predict(std::span<const double> x) const;
    std::vector<std::size_t> predict(const Dataset& data) const;

    nlohmann::json to_json() const;
    static Classifier from_json(const nlohmann::json& j);

private:
    std::variant<RandomForest, Gbdt> model_;
};

struct EntityEmbedderSet {
    EntityEmbedder url;
    EntityEmbedder hashtag;
    EntityEmbedder mention;
};

/// Trains the three entity embedders on the users' entity documents, each
/// with seed mix_seed(seed, stream_id("embedder:<kind>")).
EntityEmbedderSet train_entity_embedders(std::span<const UserFeatures> users, double min_df,
                                         const EmbedderParams& params, std::uint64_t seed);

/// Assembles the users `source` covers into a dataset; `dropped` counts the rest.
Dataset build_dataset(std::span<const UserFeatures> users, const FeatureArtifacts& artifacts,
                      const AblationConfig& config, std::size_t workers, std::size_t* dropped = nullptr,
                      std::vector<SegmentInfo>* layout = nullptr);

struct AblationRow {
    std::string encoder;
    std::string classifier;
    std::string config;
    std::string config_label;
    std::size_t n_features = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::uint64_t seed = 0;
    Metrics metrics;
};

struct AblationReport {
    std::uint64_t seed = 0;
    std::string started_at;   // ISO-8601 UTC
    std::string finished_at;
    std::vector<AblationRow> rows;
    std::map<std::string, std::size_t> dropped_train;  // per encoder
    std::map<std::string, std::size_t> dropped_test;

    nlohmann::json to_json() const;
    static AblationReport from_json(const nlohmann::json& j);
};

struct AblationInputs {
    std::span<const UserFeatures> train;
    std::span<const UserFeatures> test;
    std::vector<FeatureArtifacts> encoders;  // one per encoder source
};

/// Called with every trained cell, e.g. to persist the model.
using ModelSink = std::function<void(const AblationRow&, const Classifier&)>;

/// Trains and evaluates each (encoder, config, classifier) cell, in that
/// nesting order. Training failures are rethrown with the cell named.
AblationReport run_ablation(const AblationInputs& inputs, std::span<const AblationConfig> configs,
                            std::span<const ClassifierKind> classifiers, const ClassifierParams& params,
                            std::uint64_t seed, std::size_t workers = 1, const ModelSink& sink = {});

/// `encoder,classifier,config,f1,accuracy` with 4-decimal fractions.
std::string ablation_csv(const AblationReport& report);

std::string utc_timestamp();

}  // namespace pf
