#include "nnbench/benchmark.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "nnbench/error.hpp"
#include "nnbench/metrics.hpp"
#include "nnbench/network.hpp"
#include "nnbench/rng.hpp"
#include "nnbench/scaling.hpp"
#include "nnbench/train.hpp"

namespace nnbench::bench {

namespace {

constexpr int kResultSchemaVersion = 1;
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

nlohmann::json matrix_json(const MetricMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.runs; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.models; ++c) {
            const double v = m.at(r, c);
            row.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

MetricMatrix matrix_from_json(const nlohmann::json& j, std::size_t runs, std::size_t models) {
    MetricMatrix m(runs, models);
    if (j.size() != runs) throw DataError("metric matrix has the wrong number of runs");
    for (std::size_t r = 0; r < runs; ++r) {
        if (j[r].size() != models) throw DataError("metric matrix has the wrong number of models");
        for (std::size_t c = 0; c < models; ++c) m.at(r, c) = j[r][c].is_null() ? kMissing : j[r][c].get<double>();
    }
    return m;
}

struct JobOutcome {
    double rmse = kMissing;
    double r2 = kMissing;
    std::string failure;
    std::vector<double> predictions;
};

JobOutcome run_job(const data::Dataset& data, const ModelSpec& spec, const data::SplitIndices& split,
                   std::uint64_t seed, bool scale_target) {
    JobOutcome out;
    try {
        const auto fitted = fit_model(data, spec, split.train_rows, seed, scale_target);
        out.predictions = fitted.predict(data, split.test_rows);
        const auto actual = data::targets_of(data, split.test_rows);
        for (double p : out.predictions) {
            if (!std::isfinite(p)) throw DivergenceError("non-finite test prediction", 0);
        }
        out.rmse = metrics::rmse(actual, out.predictions);
        try {
            out.r2 = metrics::r2(actual, out.predictions);
        } catch (const DataError&) {
            out.r2 = kMissing;
        }
    } catch (const DivergenceError& e) {
        out = JobOutcome{};
        out.failure = e.what();
    }
    return out;
}

}  // namespace

std::vector<double> FittedModel::predict(const data::Dataset& raw, std::span<const std::size_t> rows) const {
    const auto scaled = data::apply_range_scaler(raw, scaling);
    auto out = net::predict_batch(network, scaled, rows);
    if (target_scaling) {
        for (auto& p : out) p = target_scaling->invert(p);
    }
    return out;
}

FittedModel fit_model(const data::Dataset& raw, const ModelSpec& spec, std::span<const std::size_t> train_rows,
                      std::uint64_t seed, bool scale_target) {
    FittedModel fitted;
    fitted.scaling = data::fit_range_scaler(raw, train_rows);
    auto scaled = data::apply_range_scaler(raw, fitted.scaling);
    if (scale_target) {
        fitted.target_scaling = data::TargetScaling::fit(data::targets_of(raw, train_rows));
        for (auto& y : scaled.target) y = fitted.target_scaling->apply(y);
    }
    auto network = net::init_network(raw.cols(), spec.hidden_sizes, spec.hidden_activation, spec.output_activation,
                                     {spec.init_half_width, derive_seed(seed, 1)});
    auto cfg = spec.config;
    cfg.seed = derive_seed(seed, 2);
    auto trained = train::train(std::move(network), scaled, train_rows, cfg);
    fitted.network = std::move(trained.network);
    fitted.trace = std::move(trained.trace);
    return fitted;
}

MetricMatrix::MetricMatrix(std::size_t r, std::size_t m) : runs(r), models(m), values(r * m, kMissing) {}

std::vector<double> MetricMatrix::column(std::size_t model) const {
    std::vector<double> out(runs);
    for (std::size_t r = 0; r < runs; ++r) out[r] = at(r, model);
    return out;
}

std::vector<std::size_t> MetricMatrix::complete_runs() const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < runs; ++r) {
        bool ok = true;
        for (std::size_t c = 0; c < models && ok; ++c) ok = std::isfinite(at(r, c));
        if (ok) out.push_back(r);
    }
    return out;
}

const MetricMatrix& BenchmarkResult::metric(const std::string& name) const {
    if (name == "RMSE" || name == "rmse") return rmse;
    if (name == "R2" || name == "r2") return r2;
    throw ConfigError("unknown benchmark metric '" + name + "'");
}

std::size_t BenchmarkResult::model_index(const std::string& label) const {
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (models[i] == label) return i;
    }
    throw ConfigError("model '" + label + "' is not part of the benchmark");
}

std::uint64_t job_seed(const data::ResamplePlan& plan, const ModelSpec& spec, std::size_t run,
                       std::size_t model_index) {
    return derive_seed(plan.seed, run, spec.seed_stream.value_or(model_index));
}

BenchmarkResult run_benchmark(const data::Dataset& data, const std::vector<ModelSpec>& specs,
                              const data::ResamplePlan& plan, const BenchmarkOptions& options) {
    if (specs.size() < 2) throw ConfigError("a benchmark compares at least 2 models");
    data.validate();
    for (const auto& s : specs) s.config.validate();
    const auto splits = data::make_resamples(data.rows(), plan);
    const std::size_t runs = splits.size();
    const std::size_t m = specs.size();

    BenchmarkResult result;
    for (const auto& s : specs) result.models.push_back(s.label);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (result.models[i] == result.models[j]) throw ConfigError("duplicate model label '" + result.models[i] + "'");
        }
    }
    result.specs = specs;
    result.plan = plan;
    result.runs = runs;
    result.scale_target = options.scale_target;
    result.rmse = MetricMatrix(runs, m);
    result.r2 = MetricMatrix(runs, m);
    result.seeds.assign(runs, std::vector<std::uint64_t>(m));
    result.split_hash.assign(runs, std::vector<std::uint64_t>(m));
    result.failures.assign(runs, std::vector<std::string>(m));
    result.test_predictions.assign(runs, std::vector<std::vector<double>>(m));
    for (const auto& split : splits) {
        result.test_rows.push_back(split.test_rows);
        result.test_actual.push_back(data::targets_of(data, split.test_rows));
    }

    const std::size_t total = runs * m;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    auto worker = [&] {
        for (std::size_t job = next++; job < total; job = next++) {
            const std::size_t run = job / m;
            const std::size_t model = job % m;
            const auto seed = job_seed(plan, specs[model], run, model);
            auto outcome = run_job(data, specs[model], splits[run], seed, options.scale_target);
            // Each job owns its (run, model) cell, so no locking is needed here.
            result.seeds[run][model] = seed;
            result.split_hash[run][model] = splits[run].hash();
            result.rmse.at(run, model) = outcome.rmse;
            result.r2.at(run, model) = outcome.r2;
            result.failures[run][model] = std::move(outcome.failure);
            result.test_predictions[run][model] = std::move(outcome.predictions);
            const std::size_t finished = ++done;
            if (options.progress) {
                std::lock_guard lock(progress_mutex);
                options.progress(finished, total);
            }
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, total));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }

    for (std::size_t model = 0; model < m; ++model) {
        bool any_ok = false;
        for (std::size_t run = 0; run < runs && !any_ok; ++run) any_ok = !result.failed(run, model);
        if (!any_ok) {
            throw DivergenceError("every run of model '" + result.models[model] + "' failed: " +
                                      result.failures[0][model],
                                  0);
        }
    }
    return result;
}

nlohmann::json to_json(const BenchmarkResult& result) {
    nlohmann::json specs = nlohmann::json::array();
    for (const auto& s : result.specs) specs.push_back(to_json(s));
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& row : result.failures) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& f : row) jr.push_back(f.empty() ? nlohmann::json(nullptr) : nlohmann::json(f));
        failures.push_back(std::move(jr));
    }
    nlohmann::json hashes = nlohmann::json::array();
    for (const auto& row : result.split_hash) {
        nlohmann::json jr = nlohmann::json::array();
        for (auto h : row) {
            std::ostringstream hex;
            hex << std::hex << h;
            jr.push_back(hex.str());
        }
        hashes.push_back(std::move(jr));
    }
    return {
        {"schema_version", kResultSchemaVersion},
        {"kind", "benchmark_result"},
        {"models", result.models},
        {"specs", specs},
        {"plan", data::to_json(result.plan)},
        {"runs", result.runs},
        {"scale_target", result.scale_target},
        {"design", "paired: every model sees the identical split sequence"},
        {"metrics", {{"RMSE", matrix_json(result.rmse)}, {"R2", matrix_json(result.r2)}}},
        {"seeds", result.seeds},
        {"split_hash", hashes},
        {"failures", failures},
        {"test_rows", result.test_rows},
        {"test_actual", result.test_actual},
        {"test_predictions", result.test_predictions},
    };
}

BenchmarkResult result_from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema_version").get<int>() != kResultSchemaVersion) {
            throw DataError("unsupported benchmark result schema_version");
        }
        if (j.at("kind").get<std::string>() != "benchmark_result") throw DataError("not a benchmark result");
        BenchmarkResult r;
        r.models = j.at("models").get<std::vector<std::string>>();
        for (const auto& s : j.at("specs")) r.specs.push_back(model_from_json(s));
        r.plan = data::plan_from_json(j.at("plan"));
        r.runs = j.at("runs").get<std::size_t>();
        r.scale_target = j.at("scale_target").get<bool>();
        const std::size_t m = r.models.size();
        r.rmse = matrix_from_json(j.at("metrics").at("RMSE"), r.runs, m);
        r.r2 = matrix_from_json(j.at("metrics").at("R2"), r.runs, m);
        r.seeds = j.at("seeds").get<std::vector<std::vector<std::uint64_t>>>();
        for (const auto& row : j.at("split_hash")) {
            std::vector<std::uint64_t> hr;
            for (const auto& h : row) hr.push_back(std::stoull(h.get<std::string>(), nullptr, 16));
            r.split_hash.push_back(std::move(hr));
        }
        for (const auto& row : j.at("failures")) {
            std::vector<std::string> fr;
            for (const auto& f : row) fr.push_back(f.is_null() ? std::string() : f.get<std::string>());
            r.failures.push_back(std::move(fr));
        }
        r.test_rows = j.at("test_rows").get<std::vector<std::vector<std::size_t>>>();
        r.test_actual = j.at("test_actual").get<std::vector<std::vector<double>>>();
        r.test_predictions = j.at("test_predictions").get<std::vector<std::vector<std::vector<double>>>>();
        if (r.specs.size() != m || r.seeds.size() != r.runs || r.failures.size() != r.runs ||
            r.split_hash.size() != r.runs) {
            throw DataError("benchmark result tables disagree in shape");
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed benchmark result: ") + e.what());
    }
}

std::string to_long_csv(const BenchmarkResult& result) {
    std::ostringstream out;
    out.precision(17);
    out << "run,model,metric,value\n";
    for (const auto& name : benchmark_metrics()) {
        const auto& m = result.metric(name);
        for (std::size_t r = 0; r < result.runs; ++r) {
            for (std::size_t c = 0; c < result.models.size(); ++c) {
                out << r + 1 << ',' << result.models[c] << ',' << name << ',';
                const double v = m.at(r, c);
                if (std::isfinite(v)) out << v;
                else out << "NA";
                out << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace nnbench::bench
