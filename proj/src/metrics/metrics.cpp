#include "nnbench/metrics.hpp"

#include <cmath>
#include <sstream>

#include "nnbench/error.hpp"

namespace nnbench::metrics {

namespace {

constexpr int kMetricsSchemaVersion = 1;
constexpr double kZeroTarget = 1e-12;

void check_pair(std::span<const double> y, std::span<const double> yhat, std::size_t min_len) {
    if (y.size() != yhat.size()) {
        throw DimensionError("observed and predicted vectors differ in length (" + std::to_string(y.size()) +
                             " vs " + std::to_string(yhat.size()) + ")");
    }
    if (y.size() < min_len) {
        throw DimensionError("metric needs at least " + std::to_string(min_len) + " observations");
    }
}

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sum_squared_residuals(std::span<const double> y, std::span<const double> yhat) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = yhat[i] - y[i];
        s += d * d;
    }
    return s;
}

std::string cell(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

std::string cell(const std::optional<double>& v) { return v ? cell(*v) : "NA"; }

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace

double rmse(std::span<const double> y, std::span<const double> yhat) {
    check_pair(y, yhat, 1);
    return std::sqrt(sum_squared_residuals(y, yhat) / static_cast<double>(y.size()));
}

double rse(std::span<const double> y, std::span<const double> yhat) {
    check_pair(y, yhat, 2);
    const double ybar = mean(y);
    double denom = 0.0;
    for (double v : y) denom += (ybar - v) * (ybar - v);
    if (!(denom > 0.0)) throw DataError("relative squared error is undefined for a constant target");
    return sum_squared_residuals(y, yhat) / denom;
}

double r2(std::span<const double> y, std::span<const double> yhat) { return 1.0 - rse(y, yhat); }

double r2_pearson(std::span<const double> y, std::span<const double> yhat) {
    check_pair(y, yhat, 2);
    const double my = mean(y);
    const double mp = mean(yhat);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sxy += (y[i] - my) * (yhat[i] - mp);
        sxx += (y[i] - my) * (y[i] - my);
        syy += (yhat[i] - mp) * (yhat[i] - mp);
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw DataError("correlation is undefined for a constant vector");
    return sxy * sxy / (sxx * syy);
}

double mae(std::span<const double> y, std::span<const double> yhat) {
    check_pair(y, yhat, 1);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(yhat[i] - y[i]);
    return s / static_cast<double>(y.size());
}

double mpe(std::span<const double> y, std::span<const double> yhat) {
    check_pair(y, yhat, 1);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (std::abs(y[i]) <= kZeroTarget) {
            throw DataError("mean percentage error is undefined: target at row " + std::to_string(i) +
                            " is zero");
        }
        s += (y[i] - yhat[i]) / y[i];
    }
    return s / static_cast<double>(y.size()) * 100.0;
}

MetricsReport evaluate(std::span<const double> y, std::span<const double> yhat) {
    MetricsReport report;
    report.n = y.size();
    report.rmse = rmse(y, yhat);
    report.mae = mae(y, yhat);
    try {
        report.rse = rse(y, yhat);
        report.r2 = 1.0 - *report.rse;
    } catch (const Error& e) {
        report.notes.emplace_back(e.what());
    }
    try {
        report.mpe = mpe(y, yhat);
    } catch (const DataError& e) {
        report.notes.emplace_back(e.what());
    }
    return report;
}

SplitReports evaluate_all(const net::Network& net, const data::Dataset& data,
                          std::span<const std::size_t> train_rows, std::span<const std::size_t> test_rows) {
    const auto train_pred = net::predict_batch(net, data, train_rows);
    const auto test_pred = net::predict_batch(net, data, test_rows);
    return {evaluate(data::targets_of(data, train_rows), train_pred),
            evaluate(data::targets_of(data, test_rows), test_pred)};
}

nlohmann::json to_json(const MetricsReport& report) {
    return {
        {"n", report.n},     {"rmse", report.rmse},     {"r2", opt(report.r2)}, {"mae", report.mae},
        {"mpe", opt(report.mpe)}, {"rse", opt(report.rse)}, {"notes", report.notes},
    };
}

nlohmann::json to_json(const SplitReports& reports) {
    return {
        {"schema_version", kMetricsSchemaVersion},
        {"r2_definition", "1 - RSE"},
        {"train", to_json(reports.train)},
        {"test", to_json(reports.test)},
    };
}

std::string table_header() {
    return "RMSE-train,RMSE-test,R2-train,R2-test,MAE-train,MAE-test,MPE-train,MPE-test,RSE-train,RSE-test";
}

std::string table_row(const SplitReports& r) {
    return cell(r.train.rmse) + ',' + cell(r.test.rmse) + ',' + cell(r.train.r2) + ',' + cell(r.test.r2) + ',' +
           cell(r.train.mae) + ',' + cell(r.test.mae) + ',' + cell(r.train.mpe) + ',' + cell(r.test.mpe) + ',' +
           cell(r.train.rse) + ',' + cell(r.test.rse);
}

}  // namespace nnbench::metrics
