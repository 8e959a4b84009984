#include "pf/entity_embedder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "pf/error.hpp"
#include "pf/rng.hpp"

namespace pf {

namespace {

void affine_dense(const DenseLayer& layer, std::span<const double> x, std::vector<double>& out) {
    out.assign(layer.bias.begin(), layer.bias.end());
    for (std::size_t o = 0; o < layer.out; ++o) {
        const double* row = layer.weights.data() + o * layer.in;
        double s = 0.0;
        for (std::size_t i = 0; i < layer.in; ++i) s += row[i] * x[i];
        out[o] += s;
    }
}

void affine_sparse(const DenseLayer& layer, const SparseVector& x, std::vector<double>& out) {
    out.assign(layer.bias.begin(), layer.bias.end());
    for (std::size_t o = 0; o < layer.out; ++o) {
        const double* row = layer.weights.data() + o * layer.in;
        double s = 0.0;
        for (std::size_t k = 0; k < x.indices.size(); ++k) s += row[x.indices[k]] * x.values[k];
        out[o] += s;
    }
}

void relu(std::vector<double>& v) {
    for (auto& x : v) x = std::max(x, 0.0);
}

void softmax(std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    double sum = 0.0;
    for (auto& x : v) {
        x = std::exp(x - m);
        sum += x;
    }
    for (auto& x : v) x /= sum;
}

void check_input(const EntityNetwork& net, const SparseVector& x) {
    if (!x.indices.empty() && x.indices.back() >= net.input_dim()) {
        throw ValidationError("entity network: input index out of range");
    }
}

DenseLayer zeros_like(const DenseLayer& l) { return DenseLayer(l.in, l.out); }

}  // namespace

EntityNetwork::Activations EntityNetwork::forward(const SparseVector& x) const {
    check_input(*this, x);
    Activations a;
    affine_sparse(layers[0], x, a.hidden);
    relu(a.hidden);
    affine_dense(layers[1], a.hidden, a.embedding);
    relu(a.embedding);
    affine_dense(layers[2], a.embedding, a.probabilities);
    softmax(a.probabilities);
    return a;
}

EntityNetwork EntityNetwork::initialize(std::size_t input_dim, std::size_t hidden, std::size_t embedding,
                                        std::size_t n_classes, std::uint64_t seed) {
    EntityNetwork net;
    const std::array<std::size_t, 4> widths = {input_dim, hidden, embedding, n_classes};
    Rng rng(seed);
    for (std::size_t l = 0; l < 3; ++l) {
        net.layers[l] = DenseLayer(widths[l], widths[l + 1]);
        const double fan = static_cast<double>(widths[l] + widths[l + 1]);
        const double limit = fan > 0 ? std::sqrt(6.0 / fan) : 0.0;
        for (auto& w : net.layers[l].weights) w = rng.uniform(-limit, limit);
    }
    return net;
}

bool EntityNetwork::operator==(const EntityNetwork& o) const {
    for (std::size_t l = 0; l < 3; ++l) {
        const auto& a = layers[l];
        const auto& b = o.layers[l];
        if (a.in != b.in || a.out != b.out || a.weights != b.weights || a.bias != b.bias) return false;
    }
    return true;
}

double batch_loss(const EntityNetwork& network, std::span<const SparseVector> x, std::span<const std::size_t> y) {
    if (x.size() != y.size() || x.empty()) throw ValidationError("batch_loss: bad batch");
    double loss = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const auto a = network.forward(x[n]);
        loss -= std::log(std::max(a.probabilities[y[n]], 1e-300));
    }
    return loss / static_cast<double>(x.size());
}

double batch_loss_gradient(const EntityNetwork& network, std::span<const SparseVector> x,
                           std::span<const std::size_t> y, NetworkGradient& g) {
    if (x.size() != y.size() || x.empty()) throw ValidationError("batch_loss_gradient: bad batch");
    for (std::size_t l = 0; l < 3; ++l) g[l] = zeros_like(network.layers[l]);
    const auto& [l1, l2, l3] = network.layers;
    const double scale = 1.0 / static_cast<double>(x.size());
    double loss = 0.0;

    std::vector<double> d3(l3.out), d2(l2.out), d1(l1.out);
    for (std::size_t n = 0; n < x.size(); ++n) {
        const auto a = network.forward(x[n]);
        loss -= std::log(std::max(a.probabilities[y[n]], 1e-300));

        for (std::size_t k = 0; k < l3.out; ++k) d3[k] = (a.probabilities[k] - (k == y[n] ? 1.0 : 0.0)) * scale;
        for (std::size_t k = 0; k < l3.out; ++k) {
            g[2].bias[k] += d3[k];
            for (std::size_t j = 0; j < l3.in; ++j) g[2].w(k, j) += d3[k] * a.embedding[j];
        }

        std::fill(d2.begin(), d2.end(), 0.0);
        for (std::size_t k = 0; k < l3.out; ++k) {
            for (std::size_t j = 0; j < l3.in; ++j) d2[j] += l3.w(k, j) * d3[k];
        }
        for (std::size_t j = 0; j < l2.out; ++j) {
            if (a.embedding[j] <= 0.0) d2[j] = 0.0;
        }
        for (std::size_t j = 0; j < l2.out; ++j) {
            if (d2[j] == 0.0) continue;
            g[1].bias[j] += d2[j];
            for (std::size_t i = 0; i < l2.in; ++i) g[1].w(j, i) += d2[j] * a.hidden[i];
        }

        std::fill(d1.begin(), d1.end(), 0.0);
        for (std::size_t j = 0; j < l2.out; ++j) {
            if (d2[j] == 0.0) continue;
            for (std::size_t i = 0; i < l2.in; ++i) d1[i] += l2.w(j, i) * d2[j];
        }
        for (std::size_t i = 0; i < l1.out; ++i) {
            if (a.hidden[i] <= 0.0) d1[i] = 0.0;
        }
        for (std::size_t i = 0; i < l1.out; ++i) {
            if (d1[i] == 0.0) continue;
            g[0].bias[i] += d1[i];
            for (std::size_t k = 0; k < x[n].indices.size(); ++k) {
                g[0].w(i, x[n].indices[k]) += d1[i] * x[n].values[k];
            }
        }
    }
    return loss * scale;
}

EntityNetwork train_network(std::span<const SparseVector> x, std::span<const std::size_t> y, std::size_t input_dim,
                            const EmbedderParams& params, std::uint64_t seed, TrainingTrace* trace) {
    if (x.size() != y.size()) throw ValidationError("train_network: inputs and labels differ in length");
    if (params.batch_size == 0) throw ValidationError("train_network: batch size must be positive");
    std::vector<std::size_t> per_class(params.n_classes, 0);
    for (auto label : y) {
        if (label >= params.n_classes) throw ValidationError("train_network: label out of range");
        ++per_class[label];
    }
    for (std::size_t k = 0; k < params.n_classes; ++k) {
        if (per_class[k] == 0) {
            throw ValidationError("train_network: class " + std::to_string(k) + " is absent from the labels");
        }
    }

    EntityNetwork net = EntityNetwork::initialize(input_dim, params.hidden, params.embedding, params.n_classes,
                                                  mix_seed(seed, stream_id("init")));
    Rng order_rng(mix_seed(seed, stream_id("shuffle")));

    NetworkGradient m, v, g;
    for (std::size_t l = 0; l < 3; ++l) {
        m[l] = zeros_like(net.layers[l]);
        v[l] = zeros_like(net.layers[l]);
    }

    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<SparseVector> batch_x;
    std::vector<std::size_t> batch_y;
    std::uint64_t step = 0;

    auto adam = [&](std::vector<double>& param, std::vector<double>& mm, std::vector<double>& vv,
                    const std::vector<double>& grad, double step_size) {
        for (std::size_t i = 0; i < param.size(); ++i) {
            mm[i] = params.beta1 * mm[i] + (1.0 - params.beta1) * grad[i];
            vv[i] = params.beta2 * vv[i] + (1.0 - params.beta2) * grad[i] * grad[i];
            param[i] -= step_size * mm[i] / (std::sqrt(vv[i]) + params.epsilon);
        }
    };

    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        order_rng.shuffle(std::span(order));
        for (std::size_t start = 0; start < order.size(); start += params.batch_size) {
            const std::size_t end = std::min(order.size(), start + params.batch_size);
            batch_x.clear();
            batch_y.clear();
            for (std::size_t k = start; k < end; ++k) {
                batch_x.push_back(x[order[k]]);
                batch_y.push_back(y[order[k]]);
            }
            batch_loss_gradient(net, batch_x, batch_y, g);
            ++step;
            const double t = static_cast<double>(step);
            const double step_size = params.learning_rate * std::sqrt(1.0 - std::pow(params.beta2, t)) /
                                     (1.0 - std::pow(params.beta1, t));
            for (std::size_t l = 0; l < 3; ++l) {
                adam(net.layers[l].weights, m[l].weights, v[l].weights, g[l].weights, step_size);
                adam(net.layers[l].bias, m[l].bias, v[l].bias, g[l].bias, step_size);
            }
        }
        if (trace) trace->epoch_loss.push_back(batch_loss(net, x, y));
    }
    return net;
}

EntityEmbedder train_entity_embedder(std::span<const std::vector<std::string>> docs, std::span<const std::size_t> y,
                                     double min_df, const EmbedderParams& params, std::uint64_t seed,
                                     TrainingTrace* trace) {
    EntityEmbedder embedder;
    embedder.seed = seed;
    embedder.tfidf = fit_tfidf(docs, min_df);
    std::vector<SparseVector> x;
    x.reserve(docs.size());
    for (const auto& doc : docs) x.push_back(tfidf_transform(doc, embedder.tfidf));
    embedder.network = train_network(x, y, embedder.tfidf.size(), params, seed, trace);
    return embedder;
}

std::vector<double> EntityEmbedder::embed(std::span<const std::string> doc) const {
    return embed(tfidf_transform(doc, tfidf));
}

std::vector<double> EntityEmbedder::embed(const SparseVector& x) const { return network.forward(x).embedding; }

std::vector<double> EntityEmbedder::predict_proba(std::span<const std::string> doc) const {
    return network.forward(tfidf_transform(doc, tfidf)).probabilities;
}

nlohmann::json EntityEmbedder::to_json() const {
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& l : network.layers) {
        layers.push_back({{"in", l.in}, {"out", l.out}, {"weights", l.weights}, {"bias", l.bias}});
    }
    return {{"format", "pf.entity_embedder"}, {"version", 1},   {"seed", seed},
            {"activation", "relu"},           {"output", "softmax"}, {"tfidf", tfidf.to_json()},
            {"layers", layers}};
}

EntityEmbedder EntityEmbedder::from_json(const nlohmann::json& j) {
    try {
        if (j.at("format") != "pf.entity_embedder" || j.at("version") != 1) {
            throw SchemaError("unsupported entity embedder container");
        }
        EntityEmbedder e;
        e.seed = j.at("seed").get<std::uint64_t>();
        e.tfidf = TfidfModel::from_json(j.at("tfidf"));
        const auto& layers = j.at("layers");
        if (layers.size() != 3) throw SchemaError("entity embedder needs 3 layers");
        for (std::size_t l = 0; l < 3; ++l) {
            DenseLayer d(layers[l].at("in").get<std::size_t>(), layers[l].at("out").get<std::size_t>());
            d.weights = layers[l].at("weights").get<std::vector<double>>();
            d.bias = layers[l].at("bias").get<std::vector<double>>();
            if (d.weights.size() != d.in * d.out || d.bias.size() != d.out) {
                throw SchemaError("layer " + std::to_string(l) + " has inconsistent shapes");
            }
            e.network.layers[l] = std::move(d);
        }
        if (e.network.layers[0].in != e.tfidf.size() || e.network.layers[1].in != e.network.layers[0].out ||
            e.network.layers[2].in != e.network.layers[1].out) {
            throw SchemaError("entity embedder layer shapes do not chain");
        }
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw SchemaError(std::string("bad entity embedder: ") + ex.what());
    }
}

void EntityEmbedder::save(const std::filesystem::path& path) const {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << to_json().dump() << '\n';
}

EntityEmbedder EntityEmbedder::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingArtifactError("entity embedder not found: " + path.string());
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("bad entity embedder file: ") + e.what());
    }
}

}  // namespace pf
