#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pf/error.hpp"

namespace pf {

/// Dense row-major feature matrix with integer class labels in [0, n_classes).
struct Dataset {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t n_classes = 0;
    std::vector<double> values;
    std::vector<std::size_t> labels;

    Dataset() = default;
    Dataset(std::size_t n_rows, std::size_t n_cols, std::size_t classes)
        : rows(n_rows), cols(n_cols), n_classes(classes), values(n_rows * n_cols, 0.0), labels(n_rows, 0) {}

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }

    /// Appends one labeled row; the first row fixes `cols`.
    void push_row(std::span<const double> x, std::size_t label) {
        if (rows == 0 && cols == 0) cols = x.size();
        if (x.size() != cols) throw ValidationError("dataset: row has inconsistent width");
        values.insert(values.end(), x.begin(), x.end());
        labels.push_back(label);
        ++rows;
    }

    /// Throws ValidationError unless labels are in range and at least two classes occur.
    void validate_for_training() const {
        if (rows == 0) throw ValidationError("training set is empty");
        if (values.size() != rows * cols || labels.size() != rows) {
            throw ValidationError("dataset shape is inconsistent");
        }
        std::vector<std::size_t> seen(n_classes, 0);
        for (auto l : labels) {
            if (l >= n_classes) throw ValidationError("label out of range");
            ++seen[l];
        }
        std::size_t present = 0;
        for (auto s : seen) present += s > 0;
        if (present < 2) throw ValidationError("training labels contain a single class");
    }
};

}  // namespace pf
