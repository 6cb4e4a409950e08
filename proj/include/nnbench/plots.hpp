#pragma once

#include <string>
#include <vector>

#include "nnbench/benchmark.hpp"
#include "nnbench/compare.hpp"

namespace nnbench::bench {

// Self-contained SVG documents (no external references).

// One panel per metric, one box per model, built from the report's BoxStats.
std::string box_plot_svg(const ComparisonReport& report);

// Horizontal interval per model pair with a vertical zero line and a dot at
// the estimate. Intervals excluding zero are drawn in the "significant"
// style, the rest in the "not-significant" style.
std::string tukey_svg(const ComparisonReport& report, const std::string& metric);

// Tables behind the plots.
std::string box_stats_csv(const ComparisonReport& report);
std::string tukey_csv(const ComparisonReport& report);

// Long format run,model,row,actual,predicted over every test split.
std::string predictions_csv(const BenchmarkResult& result);

// Rounded tick positions covering [lo, hi], about `target` of them.
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace nnbench::bench
