#include "nnbench/scaling.hpp"

#include <algorithm>
#include <string>

#include "nnbench/error.hpp"

namespace nnbench::data {

ScalingParams fit_range_scaler(const Dataset& data, std::span<const std::size_t> rows) {
    if (rows.empty()) throw ConfigError("cannot fit a range scaler on an empty row set");
    const std::size_t p = data.cols();
    ScalingParams params;
    params.min.assign(p, 0.0);
    params.max.assign(p, 0.0);
    for (std::size_t c = 0; c < p; ++c) {
        double lo = data.at(rows[0], c);
        double hi = lo;
        for (auto r : rows) {
            if (r >= data.rows()) throw DimensionError("row index " + std::to_string(r) + " out of range");
            const double v = data.at(r, c);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        params.min[c] = lo;
        params.max[c] = hi;
        if (!(hi > lo)) params.constant_columns.push_back(c);
    }
    return params;
}

namespace {

void check_dims(const Dataset& data, const ScalingParams& params) {
    if (params.min.size() != data.cols() || params.max.size() != data.cols()) {
        throw DimensionError("scaler fitted on " + std::to_string(params.min.size()) +
                             " columns, dataset has " + std::to_string(data.cols()));
    }
}

}  // namespace

Dataset apply_range_scaler(const Dataset& data, const ScalingParams& params) {
    check_dims(data, params);
    Dataset out = data;
    const std::size_t p = data.cols();
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            double& v = out.features[r * p + c];
            v = params.is_constant(c) ? 0.0 : (v - params.min[c]) / (params.max[c] - params.min[c]);
        }
    }
    return out;
}

Dataset invert_range_scaler(const Dataset& data, const ScalingParams& params) {
    check_dims(data, params);
    Dataset out = data;
    const std::size_t p = data.cols();
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            double& v = out.features[r * p + c];
            v = params.is_constant(c) ? params.min[c]
                                      : params.min[c] + v * (params.max[c] - params.min[c]);
        }
    }
    return out;
}

TargetScaling TargetScaling::fit(std::span<const double> values) {
    if (values.empty()) throw ConfigError("cannot fit target scaling on no values");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return {*lo, *hi};
}

}  // namespace nnbench::data
