#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nnbench/benchmark.hpp"

namespace nnbench::bench {

struct Summary {
    std::string model;
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
    double mean = 0.0;
    std::size_t count = 0;
};

// Per-model order statistics of a metric over the non-missing runs.
std::vector<Summary> summarize(const BenchmarkResult& result, const std::string& metric);

// Type-7 (linear interpolation) quantile of already sorted values.
double quantile_sorted(std::span<const double> sorted, double p);

struct BoxStats {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double whisker_low = 0.0;
    double whisker_high = 0.0;
    std::vector<double> outliers;
};

// Type-7 quartiles; whiskers reach the most extreme values within 1.5 IQR.
BoxStats box_stats(std::span<const double> values);

struct PairwiseComparison {
    std::string model_a;
    std::string model_b;
    double mean_difference = 0.0;  // a - b
    double t_statistic = 0.0;
    std::size_t degrees_of_freedom = 0;
    double p_value = 1.0;
    double adjusted_p = 1.0;  // Bonferroni over all model pairs
    bool degenerate_variance = false;
    bool significant = false;  // adjusted_p < alpha
};

// Paired two-sided t-test on d = a - b. `pair_count` is the Bonferroni
// multiplier. Throws StatsError with fewer than 2 pairs.
PairwiseComparison paired_ttest(std::span<const double> a, std::span<const double> b, double alpha,
                                std::size_t pair_count);

// Same on a benchmark metric, restricted to runs complete for every model.
PairwiseComparison paired_ttest(const BenchmarkResult& result, const std::string& metric,
                                const std::string& model_a, const std::string& model_b, double alpha);

struct TukeyInterval {
    std::string model_a;
    std::string model_b;
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double confidence = 0.95;

    bool significant() const noexcept { return lower > 0.0 || upper < 0.0; }
};

/// Tukey all-pair simultaneous intervals on a runs x models block design.
///
/// Each run's mean across models is subtracted first (alignment). For a pair
/// the estimate is the difference of aligned model means and the half-width
/// is q(confidence, M, (R-1)(M-1)) * sqrt(MS_residual / R).
std::vector<TukeyInterval> tukey_intervals(const std::vector<std::vector<double>>& columns,
                                           const std::vector<std::string>& labels, double confidence);

std::vector<TukeyInterval> tukey_intervals(const BenchmarkResult& result, const std::string& metric,
                                           double confidence);

struct MetricComparison {
    std::string metric;
    std::size_t complete_runs = 0;
    // M x M; upper triangle (i < j) holds mean(metric_i - metric_j), lower
    // triangle (i > j) the adjusted p of the same pair, diagonal empty.
    std::vector<std::vector<std::optional<double>>> matrix;
    std::vector<PairwiseComparison> pairs;
    std::vector<TukeyInterval> tukey;
    std::vector<BoxStats> boxes;
    std::vector<Summary> summaries;
    std::string verdict;
};

struct ComparisonReport {
    std::vector<std::string> models;
    double alpha = 0.05;
    double confidence = 0.95;
    std::vector<MetricComparison> metrics;
    std::vector<std::string> notes;

    const MetricComparison& metric(const std::string& name) const;
};

ComparisonReport compare_all(const BenchmarkResult& result, double alpha, double confidence = 0.95);

// Difference / p-value matrices in the upper/lower-triangle layout, one
// block per metric, followed by the verdicts.
std::string render_comparison_table(const ComparisonReport& report);

// One line per Tukey interval.
std::string render_tukey_table(const ComparisonReport& report);

nlohmann::json to_json(const ComparisonReport& report);
ComparisonReport comparison_from_json(const nlohmann::json& j);

}  // namespace nnbench::bench
