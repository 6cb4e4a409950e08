#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nnbench/models.hpp"

namespace nnbench::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitDivergence = 4;

struct GenOptions {
    std::size_t n = 100;
    std::size_t p = 234;
    std::size_t informative = 10;
    double noise = 0.1;
    double nonlinearity = 0.5;
    std::uint64_t seed = 0;
    std::filesystem::path out;
};

struct TrainOptions {
    std::filesystem::path data;
    std::string target = "activity";
    std::string model;
    bench::ModelOverrides overrides;
    double train_fraction = 0.76;
    std::optional<std::size_t> train_count;
    bool scale_target = false;
    std::uint64_t seed = 0;
    std::filesystem::path out;
};

struct BenchmarkOptions {
    std::filesystem::path data;
    std::string target = "activity";
    std::vector<std::string> models;
    std::size_t runs = 25;
    std::string scheme = "random";
    double train_fraction = 0.76;
    std::size_t folds = 5;
    std::optional<std::size_t> epochs;
    std::optional<std::size_t> hidden;
    std::optional<std::string> batch;
    bool scale_target = false;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    bool quiet = false;
    std::filesystem::path out;
};

struct CompareOptions {
    std::filesystem::path result;
    double alpha = 0.05;
    double confidence = 0.95;
    std::filesystem::path out;
};

struct ReportOptions {
    std::filesystem::path result;
    std::optional<std::filesystem::path> comparison;
    std::string format = "svg";
    std::filesystem::path out;
};

// Each command writes its primary outputs plus a run manifest and returns the
// paths written.
std::vector<std::filesystem::path> cmd_gen(const GenOptions& o);
std::vector<std::filesystem::path> cmd_train(const TrainOptions& o);
std::vector<std::filesystem::path> cmd_benchmark(const BenchmarkOptions& o);
std::vector<std::filesystem::path> cmd_compare(const CompareOptions& o);
std::vector<std::filesystem::path> cmd_report(const ReportOptions& o);

// Re-runs the command recorded in a manifest after checking that every input
// still has its recorded digest. `out` replaces the recorded output location.
std::vector<std::filesystem::path> cmd_replay(const std::filesystem::path& manifest,
                                              const std::optional<std::filesystem::path>& out);

nlohmann::json to_json(const GenOptions& o);
nlohmann::json to_json(const TrainOptions& o);
nlohmann::json to_json(const BenchmarkOptions& o);
nlohmann::json to_json(const CompareOptions& o);
nlohmann::json to_json(const ReportOptions& o);

}  // namespace nnbench::cli
