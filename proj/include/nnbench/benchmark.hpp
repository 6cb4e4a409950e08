#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nnbench/dataset.hpp"
#include "nnbench/models.hpp"
#include "nnbench/network.hpp"
#include "nnbench/resample.hpp"
#include "nnbench/scaling.hpp"
#include "nnbench/train.hpp"

namespace nnbench::bench {

// Runs x models values; NaN marks a missing entry (failed run or undefined metric).
struct MetricMatrix {
    std::size_t runs = 0;
    std::size_t models = 0;
    std::vector<double> values;

    MetricMatrix() = default;
    MetricMatrix(std::size_t r, std::size_t m);

    double& at(std::size_t run, std::size_t model) { return values[run * models + model]; }
    double at(std::size_t run, std::size_t model) const { return values[run * models + model]; }

    std::vector<double> column(std::size_t model) const;

    // Runs in which every model has a finite value.
    std::vector<std::size_t> complete_runs() const;
};

// The metrics recorded per (run, model) on the test split.
inline const std::vector<std::string>& benchmark_metrics() {
    static const std::vector<std::string> names = {"RMSE", "R2"};
    return names;
}

/// Paired resampling benchmark.
///
/// Every model is trained and evaluated on the identical sequence of splits.
/// `split_hash[run][model]` records the split each job actually used so the
/// pairing can be audited.
struct BenchmarkResult {
    std::vector<std::string> models;
    std::vector<ModelSpec> specs;
    data::ResamplePlan plan;
    std::size_t runs = 0;
    bool scale_target = false;
    MetricMatrix rmse;
    MetricMatrix r2;
    std::vector<std::vector<std::uint64_t>> seeds;
    std::vector<std::vector<std::uint64_t>> split_hash;
    std::vector<std::vector<std::string>> failures;  // empty string = success
    std::vector<std::vector<std::size_t>> test_rows;
    std::vector<std::vector<double>> test_actual;
    std::vector<std::vector<std::vector<double>>> test_predictions;  // [run][model][i]

    const MetricMatrix& metric(const std::string& name) const;
    std::size_t model_index(const std::string& label) const;
    bool failed(std::size_t run, std::size_t model) const { return !failures[run][model].empty(); }
};

struct BenchmarkOptions {
    std::size_t jobs = 1;
    bool scale_target = false;
    // Called after each finished (run, model) job with the count done so far.
    std::function<void(std::size_t done, std::size_t total)> progress;
};

/// A model trained on one split, with the scaling fitted on its training rows.
struct FittedModel {
    net::Network network;
    train::TrainTrace trace;
    data::ScalingParams scaling;
    std::optional<data::TargetScaling> target_scaling;

    // Predictions in the original target units for raw (unscaled) rows.
    std::vector<double> predict(const data::Dataset& raw, std::span<const std::size_t> rows) const;
};

// Fits feature (and optionally target) ranging on `train_rows`, initializes
// with derive_seed(seed, 1) and trains with derive_seed(seed, 2). Throws
// DivergenceError when training diverges.
FittedModel fit_model(const data::Dataset& raw, const ModelSpec& spec, std::span<const std::size_t> train_rows,
                      std::uint64_t seed, bool scale_target);

// Per-job seed: derive(master, run, stream) with stream = seed_stream or the
// model's position.
std::uint64_t job_seed(const data::ResamplePlan& plan, const ModelSpec& spec, std::size_t run,
                       std::size_t model_index);

BenchmarkResult run_benchmark(const data::Dataset& data, const std::vector<ModelSpec>& specs,
                              const data::ResamplePlan& plan, const BenchmarkOptions& options = {});

nlohmann::json to_json(const BenchmarkResult& result);
BenchmarkResult result_from_json(const nlohmann::json& j);

// Long format: run,model,metric,value (value "NA" for missing).
std::string to_long_csv(const BenchmarkResult& result);

}  // namespace nnbench::bench
