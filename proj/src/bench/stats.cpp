#include "nnbench/stats.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nnbench/error.hpp"

namespace nnbench::stats {

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw StatsError("incomplete beta continued fraction did not converge");
}

constexpr double kQuadratureTolerance = 1e-6;

// P(range of k standard normals <= w).
double normal_range_cdf(double w, int k) {
    if (w <= 0.0) return 0.0;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    auto integrand = [w, k, inv_sqrt2](double z) {
        // Phi(z) - Phi(z - w), written through the upper tail for z > 0 to
        // avoid cancellation between two values close to 1.
        const double mass = z > 0.0 ? 0.5 * (std::erfc((z - w) * inv_sqrt2) - std::erfc(z * inv_sqrt2))
                                    : 0.5 * (std::erfc(-z * inv_sqrt2) - std::erfc(-(z - w) * inv_sqrt2));
        const double density = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
        return k * density * std::pow(std::max(mass, 0.0), k - 1);
    };
    double error = 0.0;
    const double lo = -8.5;
    const double hi = 8.5 + 0.5 * w;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, lo, hi, 12, 1e-12, &error);
    if (!(error <= kQuadratureTolerance) || !std::isfinite(value)) {
        throw StatsError("studentized range inner quadrature did not converge (error " + std::to_string(error) +
                         ")");
    }
    return std::min(1.0, std::max(0.0, value));
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw StatsError("incomplete beta needs a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw StatsError("incomplete beta argument outside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double student_t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw StatsError("t distribution needs df > 0");
    if (std::isnan(t)) throw StatsError("t statistic is NaN");
    if (std::isinf(t)) return 0.0;
    return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double student_t_cdf(double t, double df) {
    const double tail = 0.5 * student_t_two_sided_p(t, df);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double studentized_range_cdf(double q, int k, double df) {
    if (k < 2) throw StatsError("studentized range needs k >= 2");
    if (!(df > 0.0)) throw StatsError("studentized range needs df > 0");
    if (!(q > 0.0)) return 0.0;
    if (std::isinf(q)) return 1.0;
    if (df > 1e5) return normal_range_cdf(q, k);

    // Density of s = sqrt(chi^2_df / df), integrated where it has mass.
    const double half = 0.5 * df;
    const double log_norm = std::log(2.0) + half * std::log(half) - std::lgamma(half);
    auto integrand = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double log_density = log_norm + (df - 1.0) * std::log(s) - half * s * s;
        return std::exp(log_density) * normal_range_cdf(q * s, k);
    };
    const double spread = 12.0 / std::sqrt(2.0 * df);
    const double lo = std::max(0.0, 1.0 - spread);
    const double hi = 1.0 + std::max(spread, 8.0 / std::sqrt(df));
    double error = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 12, 1e-10, &error);
    if (!(error <= kQuadratureTolerance) || !std::isfinite(value)) {
        throw StatsError("studentized range outer quadrature did not converge (error " + std::to_string(error) +
                         ")");
    }
    return std::min(1.0, std::max(0.0, value));
}

double studentized_range_quantile(double p, int k, double df) {
    if (!(p > 0.0 && p < 1.0)) throw StatsError("studentized range quantile needs p in (0, 1)");
    double lo = 0.0;
    double hi = 4.0;
    while (studentized_range_cdf(hi, k, df) < p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw StatsError("studentized range quantile bracket failed");
    }
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        if (studentized_range_cdf(mid, k, df) < p) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace nnbench::stats
