#include "nnbench/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "nnbench/error.hpp"
#include "nnbench/stats.hpp"

namespace nnbench::bench {

namespace {

constexpr int kComparisonSchemaVersion = 1;

std::vector<double> finite_values(std::span<const double> values) {
    std::vector<double> out;
    for (double v : values) {
        if (std::isfinite(v)) out.push_back(v);
    }
    return out;
}

std::vector<double> select(const std::vector<double>& column, const std::vector<std::size_t>& runs) {
    std::vector<double> out;
    out.reserve(runs.size());
    for (auto r : runs) out.push_back(column[r]);
    return out;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

double number_from(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw StatsError("quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxStats box_stats(std::span<const double> values) {
    if (values.size() < 2) throw StatsError("box statistics need at least 2 values");
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted) {
        if (!std::isfinite(v)) throw StatsError("box statistics need finite values");
    }
    std::sort(sorted.begin(), sorted.end());
    BoxStats b;
    b.min = sorted.front();
    b.max = sorted.back();
    b.q1 = quantile_sorted(sorted, 0.25);
    b.median = quantile_sorted(sorted, 0.5);
    b.q3 = quantile_sorted(sorted, 0.75);
    const double fence = 1.5 * (b.q3 - b.q1);
    const double lo_fence = b.q1 - fence;
    const double hi_fence = b.q3 + fence;
    b.whisker_low = b.q1;
    b.whisker_high = b.q3;
    for (double v : sorted) {
        if (v < lo_fence || v > hi_fence) {
            b.outliers.push_back(v);
        } else {
            b.whisker_low = std::min(b.whisker_low, v);
            b.whisker_high = std::max(b.whisker_high, v);
        }
    }
    return b;
}

std::vector<Summary> summarize(const BenchmarkResult& result, const std::string& metric) {
    const auto& m = result.metric(metric);
    std::vector<Summary> out;
    for (std::size_t c = 0; c < result.models.size(); ++c) {
        auto values = finite_values(m.column(c));
        if (values.empty()) {
            throw StatsError("every run of model '" + result.models[c] + "' is missing " + metric);
        }
        std::sort(values.begin(), values.end());
        Summary s;
        s.model = result.models[c];
        s.count = values.size();
        s.min = values.front();
        s.max = values.back();
        const std::size_t n = values.size();
        s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
        s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
        out.push_back(s);
    }
    return out;
}

PairwiseComparison paired_ttest(std::span<const double> a, std::span<const double> b, double alpha,
                                std::size_t pair_count) {
    if (a.size() != b.size()) throw DimensionError("paired samples differ in length");
    const std::size_t n = a.size();
    if (n < 2) throw StatsError("a paired t-test needs at least 2 complete runs");

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    PairwiseComparison c;
    c.mean_difference = mean;
    c.degrees_of_freedom = n - 1;
    if (sd == 0.0) {
        c.degenerate_variance = mean != 0.0;
        c.t_statistic = mean == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), mean);
        c.p_value = mean == 0.0 ? 1.0 : 0.0;
    } else {
        c.t_statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
        c.p_value = stats::student_t_two_sided_p(c.t_statistic, static_cast<double>(n - 1));
    }
    c.adjusted_p = std::min(1.0, c.p_value * static_cast<double>(std::max<std::size_t>(pair_count, 1)));
    c.significant = c.adjusted_p < alpha;
    return c;
}

PairwiseComparison paired_ttest(const BenchmarkResult& result, const std::string& metric,
                                const std::string& model_a, const std::string& model_b, double alpha) {
    const auto& m = result.metric(metric);
    const auto runs = m.complete_runs();
    const std::size_t ia = result.model_index(model_a);
    const std::size_t ib = result.model_index(model_b);
    const std::size_t k = result.models.size();
    auto c = paired_ttest(select(m.column(ia), runs), select(m.column(ib), runs), alpha, k * (k - 1) / 2);
    c.model_a = model_a;
    c.model_b = model_b;
    return c;
}

std::vector<TukeyInterval> tukey_intervals(const std::vector<std::vector<double>>& columns,
                                           const std::vector<std::string>& labels, double confidence) {
    const std::size_t m = columns.size();
    if (m < 2) throw StatsError("Tukey intervals need at least 2 models");
    if (labels.size() != m) throw DimensionError("one label per model column is required");
    if (!(confidence > 0.0 && confidence < 1.0)) throw StatsError("confidence must lie in (0, 1)");
    const std::size_t r = columns[0].size();
    for (const auto& col : columns) {
        if (col.size() != r) throw DimensionError("model columns differ in length");
    }
    if (r < 2) throw StatsError("Tukey intervals need at least 2 complete runs");

    // Align: remove each run's block mean.
    std::vector<std::vector<double>> aligned(m, std::vector<double>(r));
    for (std::size_t i = 0; i < r; ++i) {
        double block = 0.0;
        for (std::size_t c = 0; c < m; ++c) block += columns[c][i];
        block /= static_cast<double>(m);
        for (std::size_t c = 0; c < m; ++c) aligned[c][i] = columns[c][i] - block;
    }
    std::vector<double> means(m);
    for (std::size_t c = 0; c < m; ++c) {
        means[c] = std::accumulate(aligned[c].begin(), aligned[c].end(), 0.0) / static_cast<double>(r);
    }
    // Two-way residuals: aligned values already have zero row means, and the
    // aligned column means sum to zero.
    double ss = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < r; ++i) {
            const double e = aligned[c][i] - means[c];
            ss += e * e;
        }
    }
    const double df = static_cast<double>((r - 1) * (m - 1));
    const double ms = ss / df;
    const double q = stats::studentized_range_quantile(confidence, static_cast<int>(m), df);
    const double half = q * std::sqrt(ms / static_cast<double>(r));

    std::vector<TukeyInterval> out;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            TukeyInterval t;
            t.model_a = labels[a];
            t.model_b = labels[b];
            t.estimate = means[a] - means[b];
            t.lower = t.estimate - half;
            t.upper = t.estimate + half;
            t.confidence = confidence;
            out.push_back(t);
        }
    }
    return out;
}

std::vector<TukeyInterval> tukey_intervals(const BenchmarkResult& result, const std::string& metric,
                                           double confidence) {
    const auto& m = result.metric(metric);
    const auto runs = m.complete_runs();
    std::vector<std::vector<double>> columns;
    for (std::size_t c = 0; c < result.models.size(); ++c) columns.push_back(select(m.column(c), runs));
    return tukey_intervals(columns, result.models, confidence);
}

const MetricComparison& ComparisonReport::metric(const std::string& name) const {
    for (const auto& m : metrics) {
        if (m.metric == name) return m;
    }
    throw ConfigError("comparison has no metric '" + name + "'");
}

ComparisonReport compare_all(const BenchmarkResult& result, double alpha, double confidence) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    ComparisonReport report;
    report.models = result.models;
    report.alpha = alpha;
    report.confidence = confidence;
    report.notes = {
        "paired two-sided Student t-tests on per-run differences (all models share the same splits)",
        "adjusted p = min(1, p * number of model pairs) (Bonferroni)",
        "Tukey intervals computed after aligning each run by its mean across models; "
        "df = (runs - 1)(models - 1)",
        "runs with a failed or undefined entry are excluded for every model of that metric",
    };

    const std::size_t k = result.models.size();
    for (const auto& name : benchmark_metrics()) {
        MetricComparison mc;
        mc.metric = name;
        mc.complete_runs = result.metric(name).complete_runs().size();
        mc.matrix.assign(k, std::vector<std::optional<double>>(k));
        std::vector<std::string> significant;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                auto c = paired_ttest(result, name, result.models[a], result.models[b], alpha);
                mc.matrix[a][b] = c.mean_difference;
                mc.matrix[b][a] = c.adjusted_p;
                if (c.significant) significant.push_back(c.model_a + " vs " + c.model_b);
                mc.pairs.push_back(std::move(c));
            }
        }
        mc.tukey = tukey_intervals(result, name, confidence);
        for (std::size_t c = 0; c < k; ++c) mc.boxes.push_back(box_stats(finite_values(result.metric(name).column(c))));
        mc.summaries = summarize(result, name);

        std::ostringstream verdict;
        verdict << name << ": ";
        if (significant.empty()) {
            verdict << "no statistically significant difference among the models at alpha = " << alpha
                    << "; the null hypothesis is not rejected";
        } else {
            verdict << "statistically significant difference at alpha = " << alpha << " for ";
            for (std::size_t i = 0; i < significant.size(); ++i) verdict << (i ? ", " : "") << significant[i];
        }
        mc.verdict = verdict.str();
        report.metrics.push_back(std::move(mc));
    }
    return report;
}

std::string render_comparison_table(const ComparisonReport& report) {
    std::ostringstream out;
    std::size_t width = 10;
    for (const auto& m : report.models) width = std::max(width, m.size() + 2);
    for (const auto& mc : report.metrics) {
        out << mc.metric << " differences (upper triangle) and adjusted p-values (lower triangle), "
            << mc.complete_runs << " paired runs\n";
        out << pad("", width);
        for (const auto& m : report.models) out << pad(m, width);
        out << '\n';
        for (std::size_t i = 0; i < report.models.size(); ++i) {
            out << pad(report.models[i], width);
            for (std::size_t j = 0; j < report.models.size(); ++j) {
                const auto& cell = mc.matrix[i][j];
                out << pad(cell ? fixed(*cell, 5) : "", width);
            }
            out << '\n';
        }
        out << '\n';
    }
    out << "alpha = " << report.alpha << '\n';
    for (const auto& mc : report.metrics) out << mc.verdict << '\n';
    return out.str();
}

std::string render_tukey_table(const ComparisonReport& report) {
    std::ostringstream out;
    for (const auto& mc : report.metrics) {
        out << mc.metric << " Tukey simultaneous " << fixed(report.confidence * 100.0, 0)
            << "% intervals (aligned)\n";
        for (const auto& t : mc.tukey) {
            out << pad(t.model_a + " - " + t.model_b, 24) << pad(fixed(t.estimate, 5), 12) << '['
                << fixed(t.lower, 5) << ", " << fixed(t.upper, 5) << ']'
                << (t.significant() ? "  *" : "") << '\n';
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const ComparisonReport& report) {
    nlohmann::json metrics = nlohmann::json::array();
    for (const auto& mc : report.metrics) {
        nlohmann::json matrix = nlohmann::json::array();
        for (const auto& row : mc.matrix) {
            nlohmann::json jr = nlohmann::json::array();
            for (const auto& cell : row) jr.push_back(cell ? nlohmann::json(*cell) : nlohmann::json(nullptr));
            matrix.push_back(std::move(jr));
        }
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& p : mc.pairs) {
            pairs.push_back({
                {"model_a", p.model_a}, {"model_b", p.model_b}, {"mean_difference", p.mean_difference},
                {"t_statistic", number_or_null(p.t_statistic)}, {"degrees_of_freedom", p.degrees_of_freedom},
                {"p_value", p.p_value}, {"adjusted_p", p.adjusted_p},
                {"degenerate_variance", p.degenerate_variance}, {"significant", p.significant},
            });
        }
        nlohmann::json tukey = nlohmann::json::array();
        for (const auto& t : mc.tukey) {
            tukey.push_back({{"model_a", t.model_a}, {"model_b", t.model_b}, {"estimate", t.estimate},
                             {"lower", t.lower}, {"upper", t.upper}, {"confidence", t.confidence},
                             {"significant", t.significant()}});
        }
        nlohmann::json boxes = nlohmann::json::array();
        for (std::size_t i = 0; i < mc.boxes.size(); ++i) {
            const auto& b = mc.boxes[i];
            boxes.push_back({{"model", report.models[i]}, {"min", b.min}, {"q1", b.q1}, {"median", b.median},
                             {"q3", b.q3}, {"max", b.max}, {"whisker_low", b.whisker_low},
                             {"whisker_high", b.whisker_high}, {"outliers", b.outliers}});
        }
        nlohmann::json summaries = nlohmann::json::array();
        for (const auto& s : mc.summaries) {
            summaries.push_back({{"model", s.model}, {"min", s.min}, {"median", s.median}, {"max", s.max},
                                 {"mean", s.mean}, {"count", s.count}});
        }
        metrics.push_back({{"metric", mc.metric}, {"complete_runs", mc.complete_runs}, {"matrix", matrix},
                           {"pairs", pairs}, {"tukey", tukey}, {"boxes", boxes}, {"summaries", summaries},
                           {"verdict", mc.verdict}});
    }
    return {
        {"schema_version", kComparisonSchemaVersion},
        {"kind", "comparison_report"},
        {"models", report.models},
        {"alpha", report.alpha},
        {"confidence", report.confidence},
        {"notes", report.notes},
        {"metrics", metrics},
    };
}

ComparisonReport comparison_from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema_version").get<int>() != kComparisonSchemaVersion) {
            throw DataError("unsupported comparison schema_version");
        }
        if (j.at("kind").get<std::string>() != "comparison_report") throw DataError("not a comparison report");
        ComparisonReport report;
        report.models = j.at("models").get<std::vector<std::string>>();
        report.alpha = j.at("alpha").get<double>();
        report.confidence = j.at("confidence").get<double>();
        report.notes = j.at("notes").get<std::vector<std::string>>();
        for (const auto& jm : j.at("metrics")) {
            MetricComparison mc;
            mc.metric = jm.at("metric").get<std::string>();
            mc.complete_runs = jm.at("complete_runs").get<std::size_t>();
            for (const auto& row : jm.at("matrix")) {
                std::vector<std::optional<double>> r;
                for (const auto& cell : row) {
                    r.push_back(cell.is_null() ? std::nullopt : std::optional<double>(cell.get<double>()));
                }
                mc.matrix.push_back(std::move(r));
            }
            for (const auto& p : jm.at("pairs")) {
                PairwiseComparison c;
                c.model_a = p.at("model_a").get<std::string>();
                c.model_b = p.at("model_b").get<std::string>();
                c.mean_difference = p.at("mean_difference").get<double>();
                c.t_statistic = number_from(p.at("t_statistic"));
                c.degrees_of_freedom = p.at("degrees_of_freedom").get<std::size_t>();
                c.p_value = p.at("p_value").get<double>();
                c.adjusted_p = p.at("adjusted_p").get<double>();
                c.degenerate_variance = p.at("degenerate_variance").get<bool>();
                c.significant = p.at("significant").get<bool>();
                mc.pairs.push_back(std::move(c));
            }
            for (const auto& t : jm.at("tukey")) {
                mc.tukey.push_back({t.at("model_a").get<std::string>(), t.at("model_b").get<std::string>(),
                                    t.at("estimate").get<double>(), t.at("lower").get<double>(),
                                    t.at("upper").get<double>(), t.at("confidence").get<double>()});
            }
            for (const auto& b : jm.at("boxes")) {
                BoxStats s;
                s.min = b.at("min").get<double>();
                s.q1 = b.at("q1").get<double>();
                s.median = b.at("median").get<double>();
                s.q3 = b.at("q3").get<double>();
                s.max = b.at("max").get<double>();
                s.whisker_low = b.at("whisker_low").get<double>();
                s.whisker_high = b.at("whisker_high").get<double>();
                s.outliers = b.at("outliers").get<std::vector<double>>();
                mc.boxes.push_back(std::move(s));
            }
            for (const auto& s : jm.at("summaries")) {
                mc.summaries.push_back({s.at("model").get<std::string>(), s.at("min").get<double>(),
                                        s.at("median").get<double>(), s.at("max").get<double>(),
                                        s.at("mean").get<double>(), s.at("count").get<std::size_t>()});
            }
            mc.verdict = jm.at("verdict").get<std::string>();
            if (mc.matrix.size() != report.models.size() || mc.boxes.size() != report.models.size()) {
                throw DataError("comparison tables disagree with the model list");
            }
            report.metrics.push_back(std::move(mc));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed comparison report: ") + e.what());
    }
}

}  // namespace nnbench::bench
