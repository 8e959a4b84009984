#include "pf/metrics.hpp"

#include "pf/error.hpp"

namespace pf {

Metrics evaluate(std::span<const std::size_t> predictions, std::span<const std::size_t> truth) {
    if (predictions.size() != truth.size()) throw ValidationError("evaluate: predictions and truth differ in length");
    if (truth.empty()) throw ValidationError("evaluate: no samples");
    Metrics m;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] >= 4 || predictions[i] >= 4) throw ValidationError("evaluate: label out of range");
        ++m.confusion[truth[i]][predictions[i]];
    }
    std::size_t correct = 0;
    for (std::size_t c = 0; c < 4; ++c) {
        correct += m.confusion[c][c];
        std::size_t predicted = 0, actual = 0;
        for (std::size_t o = 0; o < 4; ++o) {
            predicted += m.confusion[o][c];
            actual += m.confusion[c][o];
        }
        const double tp = static_cast<double>(m.confusion[c][c]);
        const double p = predicted ? tp / static_cast<double>(predicted) : 0.0;
        const double r = actual ? tp / static_cast<double>(actual) : 0.0;
        m.per_class_f1[c] = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
        m.macro_f1 += m.per_class_f1[c];
    }
    m.macro_f1 /= 4.0;
    m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
    return m;
}

}  // namespace pf
