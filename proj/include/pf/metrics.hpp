#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace pf {

struct Metrics {
    double macro_f1 = 0.0;
    double accuracy = 0.0;
    std::array<double, 4> per_class_f1{};
    std::array<std::array<std::size_t, 4>, 4> confusion{};  // [truth][prediction]
};

/// Per-class F1 = 2PR/(P+R), 0 when P+R = 0; macro_f1 averages all four classes
/// whether or not they occur. Throws ValidationError on length mismatch, empty
/// input, or a label outside [0, 4).
Metrics evaluate(std::span<const std::size_t> predictions, std::span<const std::size_t> truth);

}  // namespace pf
