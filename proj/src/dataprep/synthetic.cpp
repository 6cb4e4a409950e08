#include "nnbench/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nnbench/error.hpp"
#include "nnbench/rng.hpp"

namespace nnbench::data {

Dataset gen_synthetic(const SyntheticSpec& spec) {
    if (spec.n < 2) throw ConfigError("synthetic data needs n >= 2");
    if (spec.p < 1) throw ConfigError("synthetic data needs p >= 1");
    if (spec.informative < 1 || spec.informative > spec.p) {
        throw ConfigError("informative column count must lie in [1, p]");
    }
    if (!(spec.noise_sd >= 0.0) || !std::isfinite(spec.noise_sd)) {
        throw ConfigError("noise standard deviation must be finite and >= 0");
    }
    if (!std::isfinite(spec.nonlinearity)) throw ConfigError("nonlinearity must be finite");

    // Separate streams so changing n does not reshuffle the coefficients.
    Rng coef_rng(derive_seed(spec.seed, 1));
    Rng feature_rng(derive_seed(spec.seed, 2));
    Rng noise_rng(derive_seed(spec.seed, 3));

    std::vector<double> beta(spec.informative);
    double offset = 1.0 + std::abs(spec.nonlinearity);
    for (auto& b : beta) {
        b = coef_rng.uniform(-1.0, 1.0);
        offset += std::abs(b);
    }

    Dataset data;
    data.target_name = "activity";
    data.feature_names.reserve(spec.p);
    for (std::size_t c = 0; c < spec.p; ++c) data.feature_names.push_back("d" + std::to_string(c + 1));

    data.features.resize(spec.n * spec.p);
    data.target.resize(spec.n);
    for (std::size_t r = 0; r < spec.n; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < spec.p; ++c) {
            const double x = feature_rng.uniform();
            data.features[r * spec.p + c] = x;
            if (c < spec.informative) s += beta[c] * x;
        }
        double y = offset + s;
        if (spec.nonlinearity != 0.0) y += spec.nonlinearity * std::sin(std::numbers::pi * s);
        if (spec.noise_sd > 0.0) y += spec.noise_sd * noise_rng.normal();
        data.target[r] = y;
    }

    data.metadata = {
        {"generator", "gen_synthetic"},
        {"recipe", "offset + s + nonlinearity*sin(pi*s) + N(0, noise_sd^2), s = sum beta_j x_j"},
        {"n", spec.n},
        {"p", spec.p},
        {"informative", spec.informative},
        {"informative_columns", "first"},
        {"noise_sd", spec.noise_sd},
        {"nonlinearity", spec.nonlinearity},
        {"seed", spec.seed},
        {"offset", offset},
        {"coefficients", beta},
    };
    return data;
}

}  // namespace nnbench::data
