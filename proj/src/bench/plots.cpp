#include "nnbench/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nnbench::bench {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string metric_title(const std::string& metric) { return metric == "R2" ? "R²" : metric; }

// Linear map from data range to pixel range.
struct Scale {
    double d0, d1, p0, p1;
    double operator()(double v) const { return d1 == d0 ? 0.5 * (p0 + p1) : p0 + (v - d0) / (d1 - d0) * (p1 - p0); }
};

std::string svg_open(double width, double height) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\">\n"
        << "<style>\n"
        << ".box{fill:#cfe2f3;stroke:#1f4e79;stroke-width:1.5}\n"
        << ".median{stroke:#c00000;stroke-width:2}\n"
        << ".whisker{stroke:#1f4e79;stroke-width:1.2}\n"
        << ".outlier{fill:none;stroke:#1f4e79}\n"
        << ".axis{stroke:#000;stroke-width:1}\n"
        << ".grid{stroke:#ddd;stroke-width:0.6}\n"
        << ".zero{stroke:#000;stroke-width:1;stroke-dasharray:4 3}\n"
        << ".significant{stroke:#c00000;stroke-width:2.5}\n"
        << ".not-significant{stroke:#888;stroke-width:2.5}\n"
        << ".estimate{fill:#1f4fd1}\n"
        << "text{font-size:12px}\n"
        << ".title{font-size:14px;font-weight:bold}\n"
        << "</style>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
    return out.str();
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
    if (!(hi > lo)) {
        const double pad = std::abs(lo) > 0.0 ? std::abs(lo) * 0.1 : 1.0;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / std::max(1, target - 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> ticks;
    const double first = std::floor(lo / step + 1e-9) * step;
    for (int i = 0;; ++i) {
        const double t = first + i * step;
        ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
        if (t >= hi - step * 1e-9) break;
    }
    return ticks;
}

std::string box_plot_svg(const ComparisonReport& report) {
    constexpr double kPanelW = 520, kPanelH = 340, kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
    const double width = kPanelW * static_cast<double>(report.metrics.size());
    std::ostringstream out;
    out << svg_open(width, kPanelH);

    for (std::size_t p = 0; p < report.metrics.size(); ++p) {
        const auto& mc = report.metrics[p];
        const double x0 = kPanelW * static_cast<double>(p);
        double lo = mc.boxes.front().min;
        double hi = mc.boxes.front().max;
        for (const auto& b : mc.boxes) {
            lo = std::min(lo, b.min);
            hi = std::max(hi, b.max);
        }
        const auto ticks = nice_ticks(lo, hi);
        const Scale y{ticks.front(), ticks.back(), kPanelH - kBottom, kTop};
        const double plot_l = x0 + kLeft;
        const double plot_r = x0 + kPanelW - kRight;
        const double slot = (plot_r - plot_l) / static_cast<double>(mc.boxes.size());

        out << "<g class=\"panel\" data-metric=\"" << escape(mc.metric) << "\">\n";
        out << "<text class=\"title\" x=\"" << num(x0 + kPanelW / 2) << "\" y=\"22\" text-anchor=\"middle\">"
            << escape(metric_title(mc.metric)) << " over " << mc.complete_runs << " resamples</text>\n";
        for (double t : ticks) {
            out << "<line class=\"grid\" x1=\"" << num(plot_l) << "\" x2=\"" << num(plot_r) << "\" y1=\""
                << num(y(t)) << "\" y2=\"" << num(y(t)) << "\"/>\n";
            out << "<text x=\"" << num(plot_l - 6) << "\" y=\"" << num(y(t) + 4) << "\" text-anchor=\"end\">"
                << label_num(t) << "</text>\n";
        }
        out << "<line class=\"axis\" x1=\"" << num(plot_l) << "\" x2=\"" << num(plot_l) << "\" y1=\""
            << num(kTop) << "\" y2=\"" << num(kPanelH - kBottom) << "\"/>\n";
        out << "<line class=\"axis\" x1=\"" << num(plot_l) << "\" x2=\"" << num(plot_r) << "\" y1=\""
            << num(kPanelH - kBottom) << "\" y2=\"" << num(kPanelH - kBottom) << "\"/>\n";
        out << "<text class=\"axis-label\" transform=\"translate(" << num(x0 + 18) << ','
            << num((kTop + kPanelH - kBottom) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
            << escape(metric_title(mc.metric)) << "</text>\n";

        for (std::size_t i = 0; i < mc.boxes.size(); ++i) {
            const auto& b = mc.boxes[i];
            const double cx = plot_l + slot * (static_cast<double>(i) + 0.5);
            const double half = std::min(30.0, slot * 0.3);
            out << "<g class=\"boxplot\" data-model=\"" << escape(report.models[i]) << "\">\n";
            out << "<line class=\"whisker\" x1=\"" << num(cx) << "\" x2=\"" << num(cx) << "\" y1=\""
                << num(y(b.whisker_low)) << "\" y2=\"" << num(y(b.q1)) << "\"/>\n";
            out << "<line class=\"whisker\" x1=\"" << num(cx) << "\" x2=\"" << num(cx) << "\" y1=\""
                << num(y(b.q3)) << "\" y2=\"" << num(y(b.whisker_high)) << "\"/>\n";
            for (double w : {b.whisker_low, b.whisker_high}) {
                out << "<line class=\"whisker\" x1=\"" << num(cx - half / 2) << "\" x2=\"" << num(cx + half / 2)
                    << "\" y1=\"" << num(y(w)) << "\" y2=\"" << num(y(w)) << "\"/>\n";
            }
            out << "<rect class=\"box\" x=\"" << num(cx - half) << "\" y=\"" << num(y(b.q3)) << "\" width=\""
                << num(2 * half) << "\" height=\"" << num(std::max(0.0, y(b.q1) - y(b.q3))) << "\"/>\n";
            out << "<line class=\"median\" x1=\"" << num(cx - half) << "\" x2=\"" << num(cx + half) << "\" y1=\""
                << num(y(b.median)) << "\" y2=\"" << num(y(b.median)) << "\"/>\n";
            for (double o : b.outliers) {
                out << "<circle class=\"outlier\" cx=\"" << num(cx) << "\" cy=\"" << num(y(o)) << "\" r=\"3\"/>\n";
            }
            out << "<text x=\"" << num(cx) << "\" y=\"" << num(kPanelH - kBottom + 18)
                << "\" text-anchor=\"middle\">" << escape(report.models[i]) << "</text>\n";
            out << "</g>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string tukey_svg(const ComparisonReport& report, const std::string& metric) {
    const auto& mc = report.metric(metric);
    constexpr double kWidth = 640, kLeft = 170, kRight = 30, kTop = 50, kRow = 28, kBottom = 60;
    const double height = kTop + kRow * static_cast<double>(mc.tukey.size()) + kBottom;

    double lo = 0.0, hi = 0.0;
    for (const auto& t : mc.tukey) {
        lo = std::min(lo, t.lower);
        hi = std::max(hi, t.upper);
    }
    const auto ticks = nice_ticks(lo, hi);
    const Scale x{ticks.front(), ticks.back(), kLeft, kWidth - kRight};
    const double plot_b = kTop + kRow * static_cast<double>(mc.tukey.size());

    std::ostringstream out;
    out << svg_open(kWidth, height);
    out << "<text class=\"title\" x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\">"
        << label_num(report.confidence * 100.0) << "% simultaneous Tukey intervals, "
        << escape(metric_title(metric)) << " differences after alignment</text>\n";
    for (double t : ticks) {
        out << "<line class=\"grid\" x1=\"" << num(x(t)) << "\" x2=\"" << num(x(t)) << "\" y1=\"" << num(kTop)
            << "\" y2=\"" << num(plot_b) << "\"/>\n";
        out << "<text x=\"" << num(x(t)) << "\" y=\"" << num(plot_b + 16) << "\" text-anchor=\"middle\">"
            << label_num(t) << "</text>\n";
    }
    out << "<line class=\"axis\" x1=\"" << num(kLeft) << "\" x2=\"" << num(kWidth - kRight) << "\" y1=\""
        << num(plot_b) << "\" y2=\"" << num(plot_b) << "\"/>\n";
    out << "<line class=\"zero\" x1=\"" << num(x(0.0)) << "\" x2=\"" << num(x(0.0)) << "\" y1=\"" << num(kTop - 8)
        << "\" y2=\"" << num(plot_b) << "\"/>\n";
    out << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(plot_b + 40)
        << "\" text-anchor=\"middle\">difference in " << escape(metric_title(metric)) << "</text>\n";

    for (std::size_t i = 0; i < mc.tukey.size(); ++i) {
        const auto& t = mc.tukey[i];
        const double cy = kTop + kRow * (static_cast<double>(i) + 0.5);
        const char* cls = t.significant() ? "significant" : "not-significant";
        out << "<g class=\"interval\" data-significant=\"" << (t.significant() ? "true" : "false") << "\" data-pair=\"" << escape(t.model_a + " - " + t.model_b) << "\">\n";
        out << "<text x=\"" << num(kLeft - 10) << "\" y=\"" << num(cy + 4) << "\" text-anchor=\"end\">"
            << escape(t.model_a + " - " + t.model_b) << "</text>\n";
        out << "<line class=\"" << cls << "\" x1=\"" << num(x(t.lower)) << "\" x2=\"" << num(x(t.upper))
            << "\" y1=\"" << num(cy) << "\" y2=\"" << num(cy) << "\"/>\n";
        for (double e : {t.lower, t.upper}) {
            out << "<line class=\"" << cls << "\" x1=\"" << num(x(e)) << "\" x2=\"" << num(x(e)) << "\" y1=\""
                << num(cy - 6) << "\" y2=\"" << num(cy + 6) << "\"/>\n";
        }
        out << "<circle class=\"estimate\" cx=\"" << num(x(t.estimate)) << "\" cy=\"" << num(cy)
            << "\" r=\"4\"/>\n";
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string box_stats_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "metric,model,min,whisker_low,q1,median,q3,whisker_high,max,outliers\n";
    for (const auto& mc : report.metrics) {
        for (std::size_t i = 0; i < mc.boxes.size(); ++i) {
            const auto& b = mc.boxes[i];
            out << mc.metric << ',' << report.models[i] << ',' << b.min << ',' << b.whisker_low << ',' << b.q1
                << ',' << b.median << ',' << b.q3 << ',' << b.whisker_high << ',' << b.max << ',';
            for (std::size_t k = 0; k < b.outliers.size(); ++k) out << (k ? ";" : "") << b.outliers[k];
            out << '\n';
        }
    }
    return out.str();
}

std::string tukey_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "metric,model_a,model_b,estimate,lower,upper,confidence,significant\n";
    for (const auto& mc : report.metrics) {
        for (const auto& t : mc.tukey) {
            out << mc.metric << ',' << t.model_a << ',' << t.model_b << ',' << t.estimate << ',' << t.lower << ','
                << t.upper << ',' << t.confidence << ',' << (t.significant() ? "true" : "false") << '\n';
        }
    }
    return out.str();
}

std::string predictions_csv(const BenchmarkResult& result) {
    std::ostringstream out;
    out.precision(17);
    out << "run,model,row,actual,predicted\n";
    for (std::size_t r = 0; r < result.runs; ++r) {
        for (std::size_t m = 0; m < result.models.size(); ++m) {
            const auto& pred = result.test_predictions[r][m];
            for (std::size_t i = 0; i < pred.size(); ++i) {
                out << r + 1 << ',' << result.models[m] << ',' << result.test_rows[r][i] << ','
                    << result.test_actual[r][i] << ',' << pred[i] << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace nnbench::bench
