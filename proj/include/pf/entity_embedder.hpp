#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pf/tfidf.hpp"

namespace pf {

/// Dense affine layer; `weights` is out x in, row-major.
struct DenseLayer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    DenseLayer() = default;
    DenseLayer(std::size_t in_dim, std::size_t out_dim)
        : in(in_dim), out(out_dim), weights(in_dim * out_dim, 0.0), bias(out_dim, 0.0) {}

    double& w(std::size_t o, std::size_t i) { return weights[o * in + i]; }
    double w(std::size_t o, std::size_t i) const { return weights[o * in + i]; }
};

/// input -> ReLU(hidden) -> ReLU(embedding) -> softmax(classes).
struct EntityNetwork {
    std::array<DenseLayer, 3> layers;

    std::size_t input_dim() const noexcept { return layers[0].in; }
    std::size_t embedding_dim() const noexcept { return layers[1].out; }
    std::size_t n_classes() const noexcept { return layers[2].out; }

    struct Activations {
        std::vector<double> hidden;     // post-ReLU
        std::vector<double> embedding;  // post-ReLU
        std::vector<double> probabilities;
    };
    Activations forward(const SparseVector& x) const;

    /// Glorot-uniform weights in +-sqrt(6 / (fan_in + fan_out)), zero biases.
    static EntityNetwork initialize(std::size_t input_dim, std::size_t hidden, std::size_t embedding,
                                    std::size_t n_classes, std::uint64_t seed);

    bool operator==(const EntityNetwork& o) const;
};

/// Same shapes as the network; holds d(loss)/d(parameter).
using NetworkGradient = std::array<DenseLayer, 3>;

/// Mean cross-entropy of `network` on the batch.
double batch_loss(const EntityNetwork& network, std::span<const SparseVector> x, std::span<const std::size_t> y);

/// Mean cross-entropy and its exact gradient by backpropagation.
double batch_loss_gradient(const EntityNetwork& network, std::span<const SparseVector> x,
                           std::span<const std::size_t> y, NetworkGradient& gradient);

struct EmbedderParams {
    std::size_t hidden = 256;
    std::size_t embedding = 64;
    std::size_t n_classes = 4;
    double learning_rate = 1e-3;
    std::size_t batch_size = 64;
    std::size_t epochs = 20;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// tf-idf vocabulary plus the trained network; the 64-wide second hidden
/// layer is the entity embedding.
struct EntityEmbedder {
    TfidfModel tfidf;
    EntityNetwork network;
    std::uint64_t seed = 0;

    std::vector<double> embed(std::span<const std::string> doc) const;
    std::vector<double> embed(const SparseVector& x) const;
    std::vector<double> predict_proba(std::span<const std::string> doc) const;

    nlohmann::json to_json() const;
    static EntityEmbedder from_json(const nlohmann::json& j);
    void save(const std::filesystem::path& path) const;
    static EntityEmbedder load(const std::filesystem::path& path);
};

struct TrainingTrace {
    std::vector<double> epoch_loss;  // full training-set loss after each epoch
};

/// Mini-batch Adam on mean cross-entropy. Batches come from a per-epoch
/// shuffle seeded from `seed`; updates run in a single fixed order so equal
/// seeds give bit-identical weights. Every class in [0, n_classes) must occur in `y`.
EntityNetwork train_network(std::span<const SparseVector> x, std::span<const std::size_t> y,
                            std::size_t input_dim, const EmbedderParams& params, std::uint64_t seed,
                            TrainingTrace* trace = nullptr);

/// Fits tf-idf on the entity documents, then trains the network on their vectors.
EntityEmbedder train_entity_embedder(std::span<const std::vector<std::string>> docs, std::span<const std::size_t> y,
                                     double min_df, const EmbedderParams& params, std::uint64_t seed,
                                     TrainingTrace* trace = nullptr);

}  // namespace pf
