#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "io.hpp"
#include "nnbench/benchmark.hpp"
#include "nnbench/compare.hpp"
#include "nnbench/dataset.hpp"
#include "nnbench/error.hpp"
#include "nnbench/metrics.hpp"
#include "nnbench/plots.hpp"
#include "nnbench/resample.hpp"
#include "nnbench/rng.hpp"
#include "nnbench/synthetic.hpp"

#ifndef NNBENCH_VERSION
#define NNBENCH_VERSION "unknown"
#endif

namespace nnbench::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kManifestSchemaVersion = 1;
constexpr int kMetricsSchemaVersion = 1;

// Seed streams of the train command.
constexpr std::uint64_t kSplitStream = 0;
constexpr std::uint64_t kModelStream = 1;

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

json overrides_json(const bench::ModelOverrides& o) {
    return {
        {"hidden", o.hidden},
        {"eta", opt(o.eta)},
        {"epochs", opt(o.epochs)},
        {"momentum", opt(o.momentum)},
        {"lambda", opt(o.lambda)},
        {"rational_decay", o.rational_decay},
        {"theta", opt(o.theta)},
        {"lambda1", opt(o.lambda1)},
        {"lambda2", opt(o.lambda2)},
        {"smoothing_eps", opt(o.smoothing_eps)},
        {"batch_mode", o.batch_mode ? json(train::to_string(*o.batch_mode)) : json(nullptr)},
        {"init_half_width", opt(o.init_half_width)},
    };
}

bench::ModelOverrides overrides_from_json(const json& j) {
    bench::ModelOverrides o;
    o.hidden = j.at("hidden").get<std::size_t>();
    o.eta = opt_from<double>(j, "eta");
    o.epochs = opt_from<std::size_t>(j, "epochs");
    o.momentum = opt_from<double>(j, "momentum");
    o.lambda = opt_from<double>(j, "lambda");
    o.rational_decay = j.at("rational_decay").get<bool>();
    o.theta = opt_from<double>(j, "theta");
    o.lambda1 = opt_from<double>(j, "lambda1");
    o.lambda2 = opt_from<double>(j, "lambda2");
    o.smoothing_eps = opt_from<double>(j, "smoothing_eps");
    if (auto b = opt_from<std::string>(j, "batch_mode")) o.batch_mode = train::parse_batch_mode(*b);
    o.init_half_width = opt_from<double>(j, "init_half_width");
    return o;
}

GenOptions gen_from_json(const json& j) {
    GenOptions o;
    o.n = j.at("n").get<std::size_t>();
    o.p = j.at("p").get<std::size_t>();
    o.informative = j.at("informative").get<std::size_t>();
    o.noise = j.at("noise").get<double>();
    o.nonlinearity = j.at("nonlinearity").get<double>();
    o.seed = j.at("seed").get<std::uint64_t>();
    o.out = j.at("out").get<std::string>();
    return o;
}

TrainOptions train_from_json(const json& j) {
    TrainOptions o;
    o.data = j.at("data").get<std::string>();
    o.target = j.at("target").get<std::string>();
    o.model = j.at("model").get<std::string>();
    o.overrides = overrides_from_json(j.at("overrides"));
    o.train_fraction = j.at("train_fraction").get<double>();
    o.train_count = opt_from<std::size_t>(j, "train_count");
    o.scale_target = j.at("scale_target").get<bool>();
    o.seed = j.at("seed").get<std::uint64_t>();
    o.out = j.at("out").get<std::string>();
    return o;
}

BenchmarkOptions benchmark_from_json(const json& j) {
    BenchmarkOptions o;
    o.data = j.at("data").get<std::string>();
    o.target = j.at("target").get<std::string>();
    o.models = j.at("models").get<std::vector<std::string>>();
    o.runs = j.at("runs").get<std::size_t>();
    o.scheme = j.at("scheme").get<std::string>();
    o.train_fraction = j.at("train_fraction").get<double>();
    o.folds = j.at("folds").get<std::size_t>();
    o.epochs = opt_from<std::size_t>(j, "epochs");
    o.hidden = opt_from<std::size_t>(j, "hidden");
    o.batch = opt_from<std::string>(j, "batch");
    o.scale_target = j.at("scale_target").get<bool>();
    o.seed = j.at("seed").get<std::uint64_t>();
    o.jobs = j.at("jobs").get<std::size_t>();
    o.quiet = true;
    o.out = j.at("out").get<std::string>();
    return o;
}

CompareOptions compare_from_json(const json& j) {
    CompareOptions o;
    o.result = j.at("result").get<std::string>();
    o.alpha = j.at("alpha").get<double>();
    o.confidence = j.at("confidence").get<double>();
    o.out = j.at("out").get<std::string>();
    return o;
}

ReportOptions report_from_json(const json& j) {
    ReportOptions o;
    o.result = j.at("result").get<std::string>();
    if (auto c = opt_from<std::string>(j, "comparison")) o.comparison = *c;
    o.format = j.at("format").get<std::string>();
    o.out = j.at("out").get<std::string>();
    return o;
}

struct Input {
    std::string role;
    fs::path path;
};

void write_manifest(const fs::path& path, const std::string& command, const json& options, const json& resolved,
                    const json& seed, const std::vector<Input>& inputs, const std::vector<fs::path>& outputs) {
    json in = json::array();
    for (const auto& i : inputs) {
        in.push_back({{"role", i.role}, {"path", i.path.string()}, {"sha256", sha256_file(i.path)}});
    }
    json out = json::array();
    for (const auto& p : outputs) out.push_back(p.filename().string());
    write_json(path, {
                         {"schema_version", kManifestSchemaVersion},
                         {"kind", "run_manifest"},
                         {"command", command},
                         {"tool_version", NNBENCH_VERSION},
                         {"timestamp", utc_timestamp()},
                         {"seed", seed},
                         {"options", options},
                         {"resolved", resolved},
                         {"inputs", in},
                         {"outputs", out},
                     });
}

fs::path out_dir_or_default(const fs::path& out) { return out.empty() ? default_out_dir() : out; }

data::Dataset load_dataset(const fs::path& path, const std::string& target) {
    auto d = data::load_csv(path, target);
    d.validate();
    return d;
}

// "NA" cells become null, everything else a number.
json table_json(const metrics::SplitReports& reports) {
    json table = json::object();
    std::istringstream header(metrics::table_header());
    std::istringstream row(metrics::table_row(reports));
    std::string name, cell;
    while (std::getline(header, name, ',') && std::getline(row, cell, ',')) {
        table[name] = cell == "NA" ? json(nullptr) : json(std::stod(cell));
    }
    return table;
}

std::string prediction_rows(const char* split, const data::Dataset& d, const std::vector<std::size_t>& rows,
                            const std::vector<double>& predicted) {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << split << ',' << rows[i] << ',' << d.target[rows[i]] << ',' << predicted[i] << '\n';
    }
    return out.str();
}

}  // namespace

json to_json(const GenOptions& o) {
    return {{"n", o.n},
            {"p", o.p},
            {"informative", o.informative},
            {"noise", o.noise},
            {"nonlinearity", o.nonlinearity},
            {"seed", o.seed},
            {"out", o.out.string()}};
}

json to_json(const TrainOptions& o) {
    return {{"data", o.data.string()},
            {"target", o.target},
            {"model", o.model},
            {"overrides", overrides_json(o.overrides)},
            {"train_fraction", o.train_fraction},
            {"train_count", opt(o.train_count)},
            {"scale_target", o.scale_target},
            {"seed", o.seed},
            {"out", o.out.string()}};
}

json to_json(const BenchmarkOptions& o) {
    return {{"data", o.data.string()},
            {"target", o.target},
            {"models", o.models},
            {"runs", o.runs},
            {"scheme", o.scheme},
            {"train_fraction", o.train_fraction},
            {"folds", o.folds},
            {"epochs", opt(o.epochs)},
            {"hidden", opt(o.hidden)},
            {"batch", opt(o.batch)},
            {"scale_target", o.scale_target},
            {"seed", o.seed},
            {"jobs", o.jobs},
            {"out", o.out.string()}};
}

json to_json(const CompareOptions& o) {
    return {{"result", o.result.string()}, {"alpha", o.alpha}, {"confidence", o.confidence}, {"out", o.out.string()}};
}

json to_json(const ReportOptions& o) {
    return {{"result", o.result.string()},
            {"comparison", o.comparison ? json(o.comparison->string()) : json(nullptr)},
            {"format", o.format},
            {"out", o.out.string()}};
}

std::vector<fs::path> cmd_gen(const GenOptions& o) {
    data::SyntheticSpec spec;
    spec.n = o.n;
    spec.p = o.p;
    spec.informative = o.informative;
    spec.noise_sd = o.noise;
    spec.nonlinearity = o.nonlinearity;
    spec.seed = o.seed;
    const auto d = data::gen_synthetic(spec);

    GenOptions resolved = o;
    if (resolved.out.empty()) resolved.out = default_out_dir() / "data.csv";
    const fs::path csv = resolved.out;
    fs::path sidecar = csv;
    sidecar.replace_extension(".json");
    fs::path manifest = csv;
    manifest.replace_extension(".manifest.json");

    write_atomic(csv, data::to_csv(d));
    write_json(sidecar, {{"schema_version", 1},
                         {"kind", "dataset"},
                         {"rows", d.rows()},
                         {"cols", d.cols()},
                         {"target", d.target_name},
                         {"metadata", d.metadata}});
    const std::vector<fs::path> outputs = {csv, sidecar};
    write_manifest(manifest, "gen", to_json(resolved), to_json(resolved), o.seed, {}, outputs);
    return {csv, sidecar, manifest};
}

std::vector<fs::path> cmd_train(const TrainOptions& o) {
    TrainOptions resolved = o;
    resolved.out = out_dir_or_default(o.out);
    const auto spec = bench::make_model(o.model, o.overrides);
    const auto d = load_dataset(o.data, o.target);

    const std::size_t n = d.rows();
    std::size_t count = 0;
    if (o.train_count) {
        if (*o.train_count < 1 || *o.train_count >= n) {
            throw ConfigError("--train-count must lie in [1, " + std::to_string(n - 1) + "]");
        }
        count = *o.train_count;
    } else {
        if (!(o.train_fraction > 0.0 && o.train_fraction < 1.0)) throw ConfigError("--train-fraction must lie in (0, 1)");
        count = data::train_count_for_fraction(n, o.train_fraction);
    }
    const auto split = data::split_train_test(n, count, derive_seed(o.seed, kSplitStream));
    for (const auto& w : spec.config.warnings()) std::cerr << "warning: " << w << '\n';

    const auto fitted = bench::fit_model(d, spec, split.train_rows, derive_seed(o.seed, kModelStream), o.scale_target);
    const auto train_pred = fitted.predict(d, split.train_rows);
    const auto test_pred = fitted.predict(d, split.test_rows);
    for (const auto* v : {&train_pred, &test_pred}) {
        for (double p : *v) {
            if (!std::isfinite(p)) throw DivergenceError("non-finite prediction after training", 0);
        }
    }
    metrics::SplitReports reports{metrics::evaluate(data::targets_of(d, split.train_rows), train_pred),
                                  metrics::evaluate(data::targets_of(d, split.test_rows), test_pred)};

    const fs::path dir = resolved.out;
    const fs::path network = dir / "network.json";
    const fs::path metrics_json = dir / "metrics.json";
    const fs::path metrics_csv = dir / "metrics.csv";
    const fs::path trace = dir / "trace.csv";
    const fs::path predictions = dir / "predictions.csv";

    json net_doc = net::to_json(fitted.network);
    net_doc["feature_scaling"] = {{"min", fitted.scaling.min}, {"max", fitted.scaling.max}};
    net_doc["target_scaling"] = fitted.target_scaling
                                    ? json{{"min", fitted.target_scaling->min}, {"max", fitted.target_scaling->max}}
                                    : json(nullptr);
    write_json(network, net_doc);

    json m = metrics::to_json(reports);
    m["schema_version"] = kMetricsSchemaVersion;
    m["kind"] = "metrics_report";
    m["model"] = o.model;
    m["train_rows"] = split.train_rows.size();
    m["test_rows"] = split.test_rows.size();
    m["table"] = table_json(reports);
    write_json(metrics_json, m);
    write_atomic(metrics_csv, metrics::table_header() + "\n" + metrics::table_row(reports) + "\n");
    write_atomic(trace, fitted.trace.to_csv());
    write_atomic(predictions, "split,row,actual,predicted\n" + prediction_rows("train", d, split.train_rows, train_pred) +
                                  prediction_rows("test", d, split.test_rows, test_pred));

    const std::vector<fs::path> outputs = {network, metrics_json, metrics_csv, trace, predictions};
    json res = to_json(resolved);
    res["model_spec"] = bench::to_json(spec);
    res["train_count"] = count;
    const fs::path manifest = dir / "train.manifest.json";
    write_manifest(manifest, "train", to_json(resolved), res, o.seed, {{"data", o.data}}, outputs);
    auto all = outputs;
    all.push_back(manifest);
    return all;
}

std::vector<fs::path> cmd_benchmark(const BenchmarkOptions& o) {
    BenchmarkOptions resolved = o;
    resolved.out = out_dir_or_default(o.out);
    if (resolved.models.empty()) resolved.models = bench::model_names();
    if (o.jobs < 1) throw ConfigError("--jobs must be at least 1");

    std::vector<bench::ModelSpec> specs;
    for (const auto& name : resolved.models) {
        bench::ModelOverrides ov;
        ov.epochs = o.epochs;
        if (o.hidden) ov.hidden = *o.hidden;
        if (o.batch) ov.batch_mode = train::parse_batch_mode(*o.batch);
        specs.push_back(bench::make_model(name, ov));
    }

    data::ResamplePlan plan;
    plan.scheme = data::parse_resample_scheme(o.scheme);
    plan.runs = o.runs;
    plan.train_fraction = o.train_fraction;
    plan.folds = o.folds;
    plan.seed = o.seed;

    const auto d = load_dataset(o.data, o.target);
    bench::BenchmarkOptions bo;
    bo.jobs = o.jobs;
    bo.scale_target = o.scale_target;
    if (!o.quiet) {
        bo.progress = [](std::size_t done, std::size_t total) {
            if (done == total || done % 10 == 0) std::cerr << "benchmark: " << done << "/" << total << " jobs\n";
        };
    }
    const auto result = bench::run_benchmark(d, specs, plan, bo);
    for (std::size_t r = 0; r < result.runs; ++r) {
        for (std::size_t m = 0; m < result.models.size(); ++m) {
            if (result.failed(r, m)) {
                std::cerr << "warning: run " << r + 1 << " of " << result.models[m]
                          << " failed: " << result.failures[r][m] << '\n';
            }
        }
    }

    const fs::path dir = resolved.out;
    const fs::path result_json = dir / "result.json";
    const fs::path long_csv = dir / "result_long.csv";
    write_json(result_json, bench::to_json(result));
    write_atomic(long_csv, bench::to_long_csv(result));

    const std::vector<fs::path> outputs = {result_json, long_csv};
    json res = to_json(resolved);
    res["plan"] = data::to_json(plan);
    json model_specs = json::array();
    for (const auto& s : specs) model_specs.push_back(bench::to_json(s));
    res["model_specs"] = model_specs;
    const fs::path manifest = dir / "benchmark.manifest.json";
    write_manifest(manifest, "benchmark", to_json(resolved), res, o.seed, {{"data", o.data}}, outputs);
    auto all = outputs;
    all.push_back(manifest);
    return all;
}

std::vector<fs::path> cmd_compare(const CompareOptions& o) {
    CompareOptions resolved = o;
    resolved.out = out_dir_or_default(o.out);
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw ConfigError("--alpha must lie in (0, 1)");
    if (!(o.confidence > 0.0 && o.confidence < 1.0)) throw ConfigError("--confidence must lie in (0, 1)");
    const auto result = bench::result_from_json(read_json(o.result));
    const auto report = bench::compare_all(result, o.alpha, o.confidence);

    const fs::path dir = resolved.out;
    const fs::path comparison = dir / "comparison.json";
    const fs::path table = dir / "comparison.txt";
    const fs::path tukey = dir / "tukey.txt";
    write_json(comparison, bench::to_json(report));
    write_atomic(table, bench::render_comparison_table(report));
    write_atomic(tukey, bench::render_tukey_table(report));

    const std::vector<fs::path> outputs = {comparison, table, tukey};
    const fs::path manifest = dir / "compare.manifest.json";
    write_manifest(manifest, "compare", to_json(resolved), to_json(resolved), nullptr, {{"result", o.result}},
                   outputs);
    auto all = outputs;
    all.push_back(manifest);
    return all;
}

std::vector<fs::path> cmd_report(const ReportOptions& o) {
    ReportOptions resolved = o;
    resolved.out = out_dir_or_default(o.out);
    if (o.format != "svg" && o.format != "csv") throw ConfigError("unknown report format '" + o.format + "'");
    const auto result = bench::result_from_json(read_json(o.result));
    const auto report = o.comparison ? bench::comparison_from_json(read_json(*o.comparison))
                                     : bench::compare_all(result, 0.05, 0.95);
    if (report.models != result.models) throw DataError("comparison and benchmark result list different models");

    const fs::path dir = resolved.out;
    std::vector<fs::path> outputs;
    if (o.format == "svg") {
        outputs.push_back(dir / "boxplot.svg");
        write_atomic(outputs.back(), bench::box_plot_svg(report));
        for (const auto& mc : report.metrics) {
            outputs.push_back(dir / ("tukey_" + mc.metric + ".svg"));
            write_atomic(outputs.back(), bench::tukey_svg(report, mc.metric));
        }
    } else {
        outputs.push_back(dir / "box_stats.csv");
        write_atomic(outputs.back(), bench::box_stats_csv(report));
        outputs.push_back(dir / "tukey.csv");
        write_atomic(outputs.back(), bench::tukey_csv(report));
    }
    outputs.push_back(dir / "predictions.csv");
    write_atomic(outputs.back(), bench::predictions_csv(result));

    std::vector<Input> inputs = {{"result", o.result}};
    if (o.comparison) inputs.push_back({"comparison", *o.comparison});
    const fs::path manifest = dir / "report.manifest.json";
    write_manifest(manifest, "report", to_json(resolved), to_json(resolved), nullptr, inputs, outputs);
    outputs.push_back(manifest);
    return outputs;
}

std::vector<fs::path> cmd_replay(const fs::path& manifest_path, const std::optional<fs::path>& out) {
    const auto m = read_json(manifest_path);
    if (!m.contains("kind") || m.at("kind") != "run_manifest") throw DataError(manifest_path.string() + " is not a run manifest");
    if (m.at("schema_version").get<int>() != kManifestSchemaVersion) throw DataError("unsupported manifest schema_version");
    for (const auto& in : m.at("inputs")) {
        const fs::path p = in.at("path").get<std::string>();
        if (sha256_file(p) != in.at("sha256").get<std::string>()) {
            throw DataError("input " + p.string() + " changed since the manifest was written");
        }
    }
    const auto command = m.at("command").get<std::string>();
    const auto& options = m.at("options");
    if (command == "gen") {
        auto o = gen_from_json(options);
        if (out) o.out = *out / o.out.filename();
        return cmd_gen(o);
    }
    if (command == "train") {
        auto o = train_from_json(options);
        if (out) o.out = *out;
        return cmd_train(o);
    }
    if (command == "benchmark") {
        auto o = benchmark_from_json(options);
        if (out) o.out = *out;
        return cmd_benchmark(o);
    }
    if (command == "compare") {
        auto o = compare_from_json(options);
        if (out) o.out = *out;
        return cmd_compare(o);
    }
    if (command == "report") {
        auto o = report_from_json(options);
        if (out) o.out = *out;
        return cmd_report(o);
    }
    throw DataError("manifest names unknown command '" + command + "'");
}

}  // namespace nnbench::cli
