#pragma once

#include <cstddef>
#include <cstdint>

#include "nnbench/dataset.hpp"

namespace nnbench::data {

struct SyntheticSpec {
    std::size_t n = 100;
    std::size_t p = 234;
    std::size_t informative = 10;
    double noise_sd = 0.1;
    double nonlinearity = 0.5;
    std::uint64_t seed = 0;
};

/// Stand-in descriptor data for benchmarking.
///
/// Features are uniform on [0, 1). With s = sum_j beta_j x_j over the first
/// `informative` columns (beta_j uniform on [-1, 1]) the target is
///
///     offset + s + nonlinearity * sin(pi * s) + N(0, noise_sd^2)
///
/// where offset = 1 + sum_j |beta_j| + nonlinearity keeps the noiseless
/// target at or above 1. The recipe and coefficients go into `metadata`.
Dataset gen_synthetic(const SyntheticSpec& spec);

}  // namespace nnbench::data
