#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace nnbench::train {

enum class Regime { plain_gd, momentum, weight_decay_l2, weight_decay_rational, quantile };
enum class BatchMode { per_observation, full_batch };

std::string to_string(Regime regime);
Regime parse_regime(const std::string& name);
std::string to_string(BatchMode mode);
BatchMode parse_batch_mode(const std::string& name);

/// Regime selector plus hyperparameters.
///
/// Regime-specific fields are optional and must be set exactly when the
/// regime uses them: `momentum` for Momentum, `lambda` for both decay
/// regimes, and `theta`, `lambda1`, `lambda2`, `smoothing_eps` for Quantile.
struct TrainConfig {
    Regime regime = Regime::plain_gd;
    double eta = 0.1;
    std::optional<double> momentum;
    std::optional<double> lambda;
    std::optional<double> theta;
    std::optional<double> lambda1;
    std::optional<double> lambda2;
    std::optional<double> smoothing_eps;
    std::size_t epochs = 1000;
    BatchMode batch_mode = BatchMode::per_observation;
    std::uint64_t seed = 0;

    // Defaults for the regime: eta 0.1, 1000 epochs, momentum 0.5,
    // lambda 1e-4, theta 0.5, lambda1 = lambda2 = 0, smoothing 1e-3.
    static TrainConfig defaults(Regime regime);

    void validate() const;

    // Non-fatal advisories, e.g. an L2 decay factor |1 - 2 lambda eta| >= 1.
    std::vector<std::string> warnings() const;

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Smoothing width in effect during `epoch` (0-based). Constant for the first
// three quarters of the budget, then decays geometrically to
// kFinalSmoothing at the last epoch. Zero stays zero.
double smoothing_at_epoch(const TrainConfig& cfg, std::size_t epoch);

inline constexpr double kFinalSmoothing = 1e-8;

nlohmann::json to_json(const TrainConfig& cfg);
TrainConfig config_from_json(const nlohmann::json& j);

}  // namespace nnbench::train
