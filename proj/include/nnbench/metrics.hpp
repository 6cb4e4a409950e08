#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nnbench/dataset.hpp"
#include "nnbench/network.hpp"

namespace nnbench::metrics {

// Scalar error measures between observed `y` and predicted `yhat`. All throw
// DimensionError on length mismatch or empty input.

double rmse(std::span<const double> y, std::span<const double> yhat);

// 1 - rse(y, yhat). Negative when worse than predicting the mean.
double r2(std::span<const double> y, std::span<const double> yhat);

// Squared Pearson correlation between y and yhat.
double r2_pearson(std::span<const double> y, std::span<const double> yhat);

double mae(std::span<const double> y, std::span<const double> yhat);

// (100/n) sum (y - yhat) / y; positive when under-predicting. Throws
// DataError naming the row when any |y| <= 1e-12.
double mpe(std::span<const double> y, std::span<const double> yhat);

// sum (yhat - y)^2 / sum (mean(y) - y)^2. Throws DataError for constant y.
double rse(std::span<const double> y, std::span<const double> yhat);

// One (model, split) evaluation. Metrics that are undefined on this data
// (constant targets, zero targets for MPE) are empty, with the reason kept
// in `notes`.
struct MetricsReport {
    double rmse = 0.0;
    std::optional<double> r2;
    double mae = 0.0;
    std::optional<double> mpe;
    std::optional<double> rse;
    std::size_t n = 0;
    std::vector<std::string> notes;
};

MetricsReport evaluate(std::span<const double> y, std::span<const double> yhat);

struct SplitReports {
    MetricsReport train;
    MetricsReport test;
};

SplitReports evaluate_all(const net::Network& net, const data::Dataset& data,
                          std::span<const std::size_t> train_rows, std::span<const std::size_t> test_rows);

nlohmann::json to_json(const MetricsReport& report);
nlohmann::json to_json(const SplitReports& reports);

// Column order: RMSE-train,RMSE-test,R2-train,R2-test,MAE-train,MAE-test,
// MPE-train,MPE-test,RSE-train,RSE-test. Undefined cells are "NA".
std::string table_header();
std::string table_row(const SplitReports& reports);

}  // namespace nnbench::metrics
