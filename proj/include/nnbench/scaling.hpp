#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nnbench/dataset.hpp"

namespace nnbench::data {

// Per-column min-max ranging fitted on a subset of rows.
struct ScalingParams {
    std::vector<double> min;
    std::vector<double> max;
    std::vector<std::size_t> constant_columns;

    bool is_constant(std::size_t col) const noexcept { return !(max[col] > min[col]); }
};

ScalingParams fit_range_scaler(const Dataset& data, std::span<const std::size_t> rows);

// Maps column values onto (v - min) / (max - min); constant columns become 0.
// The target column is left untouched.
Dataset apply_range_scaler(const Dataset& data, const ScalingParams& params);

// Inverse of apply_range_scaler on non-constant columns. Constant columns are
// restored to their fitted value.
Dataset invert_range_scaler(const Dataset& data, const ScalingParams& params);

/// Optional ranging of the activity target.
///
/// Fitted on training targets; predictions made in scaled units are mapped
/// back with `invert` before any metric is computed.
struct TargetScaling {
    double min = 0.0;
    double max = 1.0;

    static TargetScaling fit(std::span<const double> values);

    double apply(double v) const noexcept { return max > min ? (v - min) / (max - min) : 0.0; }
    double invert(double v) const noexcept { return max > min ? min + v * (max - min) : min; }
};

}  // namespace nnbench::data
