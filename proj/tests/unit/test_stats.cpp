#include <gtest/gtest.h>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <cmath>

#include "nnbench/compare.hpp"
#include "nnbench/error.hpp"
#include "nnbench/rng.hpp"
#include "nnbench/stats.hpp"
#include "tables.hpp"

using namespace nnbench;
using namespace nnbench::stats;

TEST(IncompleteBeta, MatchesBoost) {
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        const double a = rng.uniform(0.05, 40.0);
        const double b = rng.uniform(0.05, 40.0);
        const double x = rng.uniform();
        EXPECT_NEAR(regularized_incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-12)
            << "a=" << a << " b=" << b << " x=" << x;
    }
    EXPECT_EQ(regularized_incomplete_beta(2, 3, 0.0), 0.0);
    EXPECT_EQ(regularized_incomplete_beta(2, 3, 1.0), 1.0);
    EXPECT_THROW(regularized_incomplete_beta(-1, 3, 0.5), StatsError);
}

TEST(StudentT, CdfMatchesBoost) {
    for (double df : {1.0, 2.0, 3.5, 10.0, 24.0, 100.0, 1e4}) {
        boost::math::students_t dist(df);
        for (double t = -8.0; t <= 8.0; t += 0.37) {
            EXPECT_NEAR(student_t_cdf(t, df), boost::math::cdf(dist, t), 1e-12) << t << " " << df;
        }
    }
}

TEST(StudentT, PublishedTableGrid) {
    ASSERT_EQ(tables::t_critical().size(), 20u);
    for (const auto& p : tables::t_critical()) {
        EXPECT_NEAR(student_t_two_sided_p(p.t, p.df), p.two_sided_alpha, 5e-4) << "t=" << p.t << " df=" << p.df;
        EXPECT_NEAR(student_t_two_sided_p(-p.t, p.df), p.two_sided_alpha, 5e-4);
    }
}

TEST(StudentT, WorkedPairedExample) {
    EXPECT_NEAR(student_t_two_sided_p(3.4641016151377544, 2), 0.0742, 1e-4);
    EXPECT_EQ(student_t_two_sided_p(0.0, 7), 1.0);
}

TEST(StudentizedRange, PublishedTable) {
    for (const auto& p : tables::studentized_range_95()) {
        EXPECT_NEAR(studentized_range_quantile(0.95, p.k, p.df), p.q, 0.01) << "k=" << p.k << " df=" << p.df;
        EXPECT_NEAR(studentized_range_cdf(p.q, p.k, p.df), 0.95, 5e-4);
    }
}

TEST(StudentizedRange, TwoGroupsReduceToT) {
    for (double df : {4.0, 10.0, 30.0}) {
        const double t = boost::math::quantile(boost::math::students_t(df), 0.975);
        EXPECT_NEAR(studentized_range_quantile(0.95, 2, df), t * std::sqrt(2.0), 1e-5);
        for (double q : {0.5, 1.5, 3.0, 5.0}) {
            EXPECT_NEAR(studentized_range_cdf(q, 2, df), 1.0 - student_t_two_sided_p(q / std::sqrt(2.0), df), 1e-6);
        }
    }
}

TEST(StudentizedRange, Monotonicity) {
    for (double conf : {0.9, 0.95, 0.99}) {
        for (double df : {5.0, 12.0, 40.0, 120.0}) {
            double prev = 0.0;
            for (int k = 2; k <= 8; ++k) {
                const double q = studentized_range_quantile(conf, k, df);
                EXPECT_GT(q, prev);
                prev = q;
            }
        }
    }
    for (int k : {3, 5}) {
        EXPECT_LT(studentized_range_quantile(0.90, k, 20), studentized_range_quantile(0.95, k, 20));
        EXPECT_LT(studentized_range_quantile(0.95, k, 20), studentized_range_quantile(0.99, k, 20));
        EXPECT_GT(studentized_range_quantile(0.95, k, 10), studentized_range_quantile(0.95, k, 20));
        EXPECT_GT(studentized_range_quantile(0.95, k, 20), studentized_range_quantile(0.95, k, 60));
    }
}

TEST(StudentizedRange, InvalidArguments) {
    EXPECT_THROW(studentized_range_cdf(1.0, 1, 10), StatsError);
    EXPECT_THROW(studentized_range_cdf(1.0, 3, 0), StatsError);
    EXPECT_THROW(studentized_range_quantile(1.0, 3, 10), StatsError);
    EXPECT_EQ(studentized_range_cdf(0.0, 3, 10), 0.0);
}

TEST(Summary, OrderStatistics) {
    using bench::quantile_sorted;
    const std::vector<double> v = {1, 2, 3, 4};
    EXPECT_EQ(quantile_sorted(v, 0.5), 2.5);
    EXPECT_EQ(quantile_sorted(v, 0.0), 1.0);
    EXPECT_EQ(quantile_sorted(v, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.25), 1.75);
}

TEST(BoxStats, Examples) {
    const auto b = bench::box_stats(std::vector<double>{5, 3, 1, 4, 2});
    EXPECT_EQ(b.q1, 2.0);
    EXPECT_EQ(b.median, 3.0);
    EXPECT_EQ(b.q3, 4.0);
    EXPECT_TRUE(b.outliers.empty());
    EXPECT_EQ(b.whisker_low, 1.0);
    EXPECT_EQ(b.whisker_high, 5.0);

    const auto c = bench::box_stats(std::vector<double>{7, 7, 7});
    for (double v : {c.min, c.q1, c.median, c.q3, c.max, c.whisker_low, c.whisker_high}) EXPECT_EQ(v, 7.0);

    const auto o = bench::box_stats(std::vector<double>{1, 2, 3, 4, 100});
    ASSERT_EQ(o.outliers.size(), 1u);
    EXPECT_EQ(o.outliers[0], 100.0);
    EXPECT_EQ(o.whisker_high, 4.0);
    EXPECT_EQ(o.max, 100.0);

    EXPECT_THROW(bench::box_stats(std::vector<double>{1}), StatsError);
}

TEST(BoxStats, OrderingInvariant) {
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> v(2 + rng.below(30));
        for (auto& x : v) x = rng.normal() * (rng.below(10) == 0 ? 10 : 1);
        const auto b = bench::box_stats(v);
        EXPECT_LE(b.min, b.whisker_low);
        EXPECT_LE(b.whisker_low, b.q1);
        EXPECT_LE(b.q1, b.median);
        EXPECT_LE(b.median, b.q3);
        EXPECT_LE(b.q3, b.whisker_high);
        EXPECT_LE(b.whisker_high, b.max);
    }
}

TEST(PairedTTest, WorkedExampleAndDegenerateCases) {
    const std::vector<double> a = {1, 2, 3}, zero = {0, 0, 0};
    const auto c = bench::paired_ttest(a, zero, 0.05, 1);
    EXPECT_NEAR(c.t_statistic, 3.4641, 1e-4);
    EXPECT_EQ(c.degrees_of_freedom, 2u);
    EXPECT_NEAR(c.p_value, 0.0742, 1e-4);
    EXPECT_EQ(c.mean_difference, 2.0);

    const auto same = bench::paired_ttest(a, a, 0.05, 10);
    EXPECT_EQ(same.mean_difference, 0.0);
    EXPECT_EQ(same.p_value, 1.0);
    EXPECT_EQ(same.adjusted_p, 1.0);

    const std::vector<double> shifted = {2, 3, 4};
    const auto deg = bench::paired_ttest(shifted, a, 0.05, 1);
    EXPECT_TRUE(deg.degenerate_variance);
    EXPECT_EQ(deg.p_value, 0.0);
    EXPECT_TRUE(deg.significant);

    EXPECT_THROW(bench::paired_ttest(std::vector<double>{1}, std::vector<double>{2}, 0.05, 1), StatsError);
}

TEST(PairedTTest, AntisymmetryAndBonferroni) {
    Rng rng(4);
    std::vector<double> a(12), b(12);
    for (int i = 0; i < 12; ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal() + 0.3;
    }
    const auto ab = bench::paired_ttest(a, b, 0.05, 10);
    const auto ba = bench::paired_ttest(b, a, 0.05, 10);
    EXPECT_DOUBLE_EQ(ab.mean_difference, -ba.mean_difference);
    EXPECT_DOUBLE_EQ(ab.t_statistic, -ba.t_statistic);
    EXPECT_DOUBLE_EQ(ab.p_value, ba.p_value);
    EXPECT_DOUBLE_EQ(ab.adjusted_p, std::min(1.0, 10 * ab.p_value));
}

TEST(Tukey, IdenticalColumnsContainZero) {
    const std::vector<double> col = {1.0, 1.3, 0.8, 1.1};
    const auto ivs = bench::tukey_intervals({col, col, col}, {"a", "b", "c"}, 0.95);
    ASSERT_EQ(ivs.size(), 3u);
    for (const auto& iv : ivs) {
        EXPECT_EQ(iv.estimate, 0.0);
        EXPECT_LE(iv.lower, 0.0);
        EXPECT_GE(iv.upper, 0.0);
        EXPECT_FALSE(iv.significant());
    }
}

TEST(Tukey, TwoModelsAgreeWithPairedT) {
    Rng rng(21);
    int agree = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t runs = 3 + rng.below(20);
        const double shift = rng.uniform(-1.0, 1.0);
        std::vector<double> a(runs), b(runs);
        for (std::size_t r = 0; r < runs; ++r) {
            const double block = rng.normal() * 2.0;
            a[r] = block + rng.normal();
            b[r] = block + shift + rng.normal();
        }
        const auto iv = bench::tukey_intervals({a, b}, {"a", "b"}, 0.95)[0];
        const auto t = bench::paired_ttest(a, b, 0.05, 1);
        EXPECT_LE(iv.lower, iv.estimate);
        EXPECT_GE(iv.upper, iv.estimate);
        EXPECT_NEAR(iv.estimate, t.mean_difference, 1e-12);
        if (iv.significant() == (t.p_value < 0.05)) ++agree;
    }
    EXPECT_EQ(agree, 100);
}

TEST(Tukey, HalfWidthFromAlignedResiduals) {
    // Hand-computed two-way layout: 3 runs x 3 models.
    const std::vector<std::vector<double>> cols = {{1, 2, 3}, {2, 4, 3}, {4, 5, 7}};
    const auto ivs = bench::tukey_intervals(cols, {"a", "b", "c"}, 0.95);
    double grand = 0;
    for (const auto& c : cols) {
        for (double v : c) grand += v;
    }
    grand /= 9;
    double ss = 0;
    for (std::size_t m = 0; m < 3; ++m) {
        const double cm = (cols[m][0] + cols[m][1] + cols[m][2]) / 3;
        for (std::size_t r = 0; r < 3; ++r) {
            const double rm = (cols[0][r] + cols[1][r] + cols[2][r]) / 3;
            const double e = cols[m][r] - rm - cm + grand;
            ss += e * e;
        }
    }
    const double ms = ss / 4.0;
    const double half = studentized_range_quantile(0.95, 3, 4) * std::sqrt(ms / 3.0);
    EXPECT_NEAR(ivs[0].estimate, 2.0 - 3.0, 1e-12);
    EXPECT_NEAR(ivs[0].upper - ivs[0].estimate, half, 1e-9);
    EXPECT_NEAR(ivs[0].estimate - ivs[0].lower, half, 1e-9);
}

TEST(Tukey, InsufficientRuns) {
    EXPECT_THROW(bench::tukey_intervals(std::vector<std::vector<double>>{{1.0}, {2.0}}, {"a", "b"}, 0.95), StatsError);
    EXPECT_THROW(bench::tukey_intervals(std::vector<std::vector<double>>{{1.0, 2.0}}, {"a"}, 0.95), StatsError);
}
