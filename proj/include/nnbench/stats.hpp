#pragma once

namespace nnbench::stats {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

double normal_cdf(double z);

// Student t with `df` > 0 degrees of freedom.
double student_t_cdf(double t, double df);

// P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);

/// Distribution of the studentized range of k independent standard normal
/// means divided by an independent sqrt(chi^2_df / df).
///
/// The CDF is the double integral over the scale s and the location z of
/// k phi(z) [Phi(z) - Phi(z - q s)]^(k-1), evaluated by adaptive
/// Gauss-Kronrod quadrature with a 1e-6 absolute error budget. Throws
/// StatsError if either integral fails to reach it.
double studentized_range_cdf(double q, int k, double df);

// Inverse of studentized_range_cdf in q by bisection, to 1e-7 in q.
double studentized_range_quantile(double p, int k, double df);

}  // namespace nnbench::stats
