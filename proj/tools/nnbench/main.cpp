#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "nnbench/error.hpp"
#include "nnbench/models.hpp"
#include "nnbench/train_config.hpp"

namespace {

using namespace nnbench;
using namespace nnbench::cli;

template <class T>
CLI::Option* add_optional(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& desc) {
    return app->add_option_function<T>(name, [&target](const T& v) { target = v; }, desc);
}

void print_outputs(const std::vector<std::filesystem::path>& paths) {
    for (const auto& p : paths) std::cout << p.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Neural-network regression benchmark: data generation, training, paired comparison, plots"};
    app.set_version_flag("--version", NNBENCH_VERSION_STRING);
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 success, 1 internal error, 2 usage or configuration error, "
        "3 data or file error, 4 training divergence.\n"
        "NNBENCH_OUT_DIR sets the default output directory.");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic descriptor dataset (CSV + JSON sidecar)");
    gen_cmd->add_option("--n", gen.n, "Observations")->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--p", gen.p, "Descriptors")->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--informative", gen.informative, "Descriptors that drive the target")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen_cmd->add_option("--noise", gen.noise, "Gaussian noise standard deviation")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    gen_cmd->add_option("--nonlinearity", gen.nonlinearity, "Amplitude of the sine term")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Master seed")->required();
    gen_cmd->add_option("--out", gen.out, "Output CSV path (default $NNBENCH_OUT_DIR/data.csv)");

    TrainOptions tr;
    std::optional<std::string> tr_batch;
    auto* train_cmd = app.add_subcommand("train", "Train one model on a single train/test split");
    train_cmd->add_option("--data", tr.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--target", tr.target, "Target column")->capture_default_str();
    train_cmd->add_option("--model", tr.model, "Model name")
        ->required()
        ->check(CLI::IsMember(bench::model_names()));
    train_cmd->add_option("--hidden", tr.overrides.hidden, "Hidden layer width")->capture_default_str();
    add_optional(train_cmd, "--eta", tr.overrides.eta, "Learning rate");
    add_optional(train_cmd, "--epochs", tr.overrides.epochs, "Training epochs");
    add_optional(train_cmd, "--momentum", tr.overrides.momentum, "Momentum coefficient (gdbpmnn)");
    add_optional(train_cmd, "--lambda", tr.overrides.lambda, "Weight-decay coefficient (bpwdnn)");
    train_cmd->add_flag("--rational-decay", tr.overrides.rational_decay, "Use the rational decay penalty (bpwdnn)");
    add_optional(train_cmd, "--theta", tr.overrides.theta, "Quantile level (qrnn)");
    add_optional(train_cmd, "--lambda1", tr.overrides.lambda1, "Input-to-hidden penalty (qrnn)");
    add_optional(train_cmd, "--lambda2", tr.overrides.lambda2, "Output-layer penalty (qrnn)");
    add_optional(train_cmd, "--smoothing", tr.overrides.smoothing_eps, "Pinball smoothing width (qrnn)");
    add_optional(train_cmd, "--batch", tr_batch, "per-observation or full-batch")
        ->check(CLI::IsMember({"per-observation", "full-batch"}));
    add_optional(train_cmd, "--init-half-width", tr.overrides.init_half_width, "Initial weights drawn from U[-w, w]");
    train_cmd->add_option("--train-fraction", tr.train_fraction, "Training share of the rows")->capture_default_str();
    add_optional(train_cmd, "--train-count", tr.train_count, "Training rows (overrides --train-fraction)");
    train_cmd->add_flag("--scale-target", tr.scale_target, "Range the target on the training rows");
    train_cmd->add_option("--seed", tr.seed, "Master seed")->required();
    train_cmd->add_option("--out", tr.out, "Output directory");

    BenchmarkOptions bm;
    auto* bench_cmd = app.add_subcommand("benchmark", "Paired resampling benchmark of several models");
    bench_cmd->add_option("--data", bm.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--target", bm.target, "Target column")->capture_default_str();
    bench_cmd->add_option("--models", bm.models, "Comma-separated model names (default: all five)")
        ->delimiter(',')
        ->check(CLI::IsMember(bench::model_names()));
    bench_cmd->add_option("--runs", bm.runs, "Resamples (k-fold: repetitions)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--scheme", bm.scheme, "random or kfold")
        ->check(CLI::IsMember({"random", "kfold"}))
        ->capture_default_str();
    bench_cmd->add_option("--train-fraction", bm.train_fraction, "Training share for random splits")
        ->capture_default_str();
    bench_cmd->add_option("--folds", bm.folds, "Folds for kfold")->capture_default_str();
    add_optional(bench_cmd, "--epochs", bm.epochs, "Training epochs for every model");
    add_optional(bench_cmd, "--hidden", bm.hidden, "Hidden width for the hidden-layer models");
    add_optional(bench_cmd, "--batch", bm.batch, "per-observation or full-batch")
        ->check(CLI::IsMember({"per-observation", "full-batch"}));
    bench_cmd->add_flag("--scale-target", bm.scale_target, "Range the target on each training split");
    bench_cmd->add_option("--seed", bm.seed, "Master seed")->required();
    bench_cmd->add_option("--jobs", bm.jobs, "Parallel training jobs")->check(CLI::PositiveNumber)->capture_default_str();
    bench_cmd->add_flag("--quiet", bm.quiet, "No progress output");
    bench_cmd->add_option("--out", bm.out, "Output directory");

    CompareOptions cmp;
    auto* compare_cmd = app.add_subcommand("compare", "Paired t-tests and Tukey intervals on a benchmark result");
    compare_cmd->add_option("--result", cmp.result, "result.json from benchmark")->required();
    compare_cmd->add_option("--alpha", cmp.alpha, "Family-wise significance level")->capture_default_str();
    compare_cmd->add_option("--confidence", cmp.confidence, "Tukey interval confidence")->capture_default_str();
    compare_cmd->add_option("--out", cmp.out, "Output directory");

    ReportOptions rep;
    std::optional<std::string> rep_comparison;
    auto* report_cmd = app.add_subcommand("report", "Box plots, Tukey chart and prediction tables");
    report_cmd->add_option("--result", rep.result, "result.json from benchmark")->required();
    add_optional(report_cmd, "--comparison", rep_comparison, "comparison.json (computed at alpha 0.05 if absent)");
    report_cmd->add_option("--format", rep.format, "svg or csv")->capture_default_str();
    report_cmd->add_option("--out", rep.out, "Output directory");

    std::string manifest;
    std::optional<std::string> replay_out;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a command from its manifest");
    replay_cmd->add_option("manifest", manifest, "Manifest JSON")->required();
    add_optional(replay_cmd, "--out", replay_out, "Output location (default: as recorded)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen_cmd) {
            print_outputs(cmd_gen(gen));
        } else if (*train_cmd) {
            if (tr_batch) tr.overrides.batch_mode = train::parse_batch_mode(*tr_batch);
            print_outputs(cmd_train(tr));
        } else if (*bench_cmd) {
            print_outputs(cmd_benchmark(bm));
        } else if (*compare_cmd) {
            print_outputs(cmd_compare(cmp));
        } else if (*report_cmd) {
            if (rep_comparison) rep.comparison = *rep_comparison;
            print_outputs(cmd_report(rep));
        } else if (*replay_cmd) {
            std::optional<std::filesystem::path> out;
            if (replay_out) out = *replay_out;
            print_outputs(cmd_replay(manifest, out));
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DivergenceError& e) {
        std::cerr << "error: training diverged";
        if (e.epoch() > 0) std::cerr << " at epoch " << e.epoch();
        std::cerr << ": " << e.what() << '\n';
        return kExitDivergence;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}
