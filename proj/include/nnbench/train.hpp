#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nnbench/dataset.hpp"
#include "nnbench/network.hpp"
#include "nnbench/train_config.hpp"

namespace nnbench::train {

// One entry per completed epoch. `data_term` is the unpenalized loss summed
// over the training rows (exact pinball for Quantile), `objective` adds the
// regime penalty.
struct TrainTrace {
    std::vector<double> objective;
    std::vector<double> data_term;
    std::vector<double> param_norm;

    std::size_t epochs() const noexcept { return objective.size(); }

    // Columns: epoch,objective,data_term,param_norm (epoch is 1-based).
    std::string to_csv() const;
};

struct TrainResult {
    net::Network network;
    TrainTrace trace;
};

/// Runs `cfg.epochs` epochs of the configured regime on `rows` of `data`.
///
/// Per-observation mode visits the rows in a freshly shuffled order each
/// epoch (seeded by cfg.seed) and steps after every observation. Full-batch
/// mode steps once per epoch on the mean gradient. The momentum buffer is
/// never reset within a run. Throws DivergenceError naming the epoch when a
/// parameter or the objective becomes non-finite.
TrainResult train(net::Network net, const data::Dataset& data, std::span<const std::size_t> rows,
                  const TrainConfig& cfg);

// Objective pieces of the regime on the given rows with the current network.
struct ObjectiveValue {
    double data_term = 0.0;
    double penalty = 0.0;
    double total() const noexcept { return data_term + penalty; }
};

ObjectiveValue evaluate_objective(const net::Network& net, const data::Dataset& data,
                                  std::span<const std::size_t> rows, const TrainConfig& cfg);

}  // namespace nnbench::train
