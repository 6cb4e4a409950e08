#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nnbench/error.hpp"
#include "nnbench/metrics.hpp"
#include "nnbench/network.hpp"
#include "nnbench/rng.hpp"
#include "oracles.hpp"

using namespace nnbench;
using namespace nnbench::metrics;

using Vec = std::vector<double>;

TEST(Rmse, Examples) {
    const Vec y = {1, 2, 3};
    EXPECT_EQ(rmse(y, y), 0.0);
    EXPECT_DOUBLE_EQ(rmse(Vec{0, 0}, Vec{3, 4}), std::sqrt(12.5));
    const Vec a = {1, -2, 5}, b = {0.5, 1, 2};
    Vec ca(3), cb(3);
    for (int i = 0; i < 3; ++i) {
        ca[i] = -3 * a[i];
        cb[i] = -3 * b[i];
    }
    EXPECT_NEAR(rmse(ca, cb), 3 * rmse(a, b), 1e-12);
    EXPECT_THROW(rmse(Vec{1}, Vec{1, 2}), DimensionError);
    EXPECT_THROW(rmse(Vec{}, Vec{}), DimensionError);
}

TEST(R2, Examples) {
    const Vec y = {1, 2, 3};
    EXPECT_EQ(r2(y, y), 1.0);
    EXPECT_EQ(r2(y, Vec{2, 2, 2}), 0.0);
    EXPECT_EQ(r2(y, Vec{3, 2, 1}), -3.0);
    EXPECT_THROW(r2(Vec{4, 4, 4}, Vec{1, 2, 3}), DataError);
}

TEST(R2, PearsonVariantIsSeparate) {
    const Vec y = {1, 2, 3, 4};
    const Vec f = {2, 4, 6, 8};
    EXPECT_NEAR(r2_pearson(y, f), 1.0, 1e-15);
    EXPECT_LT(r2(y, f), 0.0);
}

TEST(Mae, Examples) {
    const Vec y = {1, 2};
    EXPECT_EQ(mae(y, y), 0.0);
    EXPECT_EQ(mae(Vec{0, 0}, Vec{1, 3}), 2.0);
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
        Vec a(10), b(10);
        for (int i = 0; i < 10; ++i) {
            a[i] = rng.uniform(-5, 5);
            b[i] = rng.uniform(-5, 5);
        }
        EXPECT_LE(mae(a, b), rmse(a, b) + 1e-15);
    }
}

TEST(Mpe, ExamplesAndZeroTargets) {
    EXPECT_EQ(mpe(Vec{2, 5}, Vec{2, 5}), 0.0);
    EXPECT_EQ(mpe(Vec{2}, Vec{1}), 50.0);
    EXPECT_EQ(mpe(Vec{2}, Vec{3}), -50.0);
    try {
        mpe(Vec{1, 0, 3}, Vec{1, 1, 1});
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos) << e.what();
    }
    EXPECT_THROW(mpe(Vec{1e-13}, Vec{1}), DataError);
}

TEST(Rse, Examples) {
    const Vec y = {1, 2, 3};
    EXPECT_EQ(rse(y, y), 0.0);
    EXPECT_EQ(rse(y, Vec{2, 2, 2}), 1.0);
    EXPECT_EQ(rse(y, Vec{1, 2, 4}), 0.5);
    EXPECT_THROW(rse(Vec{2, 2}, Vec{1, 2}), DataError);
}

TEST(Metrics, NaiveLoopOraclesOnRandomPairs) {
    Rng rng(99);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 2 + rng.below(40);
        Vec y(n), f(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.uniform(0.5, 10.0) * (rng.below(2) ? 1 : -1);
            f[i] = y[i] + rng.normal();
        }
        ASSERT_LE(oracle::relative_difference(rmse(y, f), oracle::rmse(y, f)), 1e-12);
        ASSERT_LE(oracle::relative_difference(mae(y, f), oracle::mae(y, f)), 1e-12);
        ASSERT_LE(oracle::relative_difference(mpe(y, f), oracle::mpe(y, f)), 1e-12);
        ASSERT_LE(oracle::relative_difference(rse(y, f), oracle::rse(y, f)), 1e-12);
        ASSERT_LE(oracle::relative_difference(r2(y, f), oracle::r2(y, f)), 1e-12);
        ASSERT_LE(std::abs(r2(y, f) + rse(y, f) - 1.0), 1e-15);
    }
}

TEST(Metrics, ConsistencyPermutationAndSign) {
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 3 + rng.below(20);
        Vec y(n), f(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.uniform(1, 3);
            f[i] = rng.uniform(1, 3);
        }
        const double r = rmse(y, f);
        double ss = 0, den = 0, m = std::accumulate(y.begin(), y.end(), 0.0) / n;
        for (std::size_t i = 0; i < n; ++i) {
            ss += (f[i] - y[i]) * (f[i] - y[i]);
            den += (y[i] - m) * (y[i] - m);
        }
        EXPECT_LE(oracle::relative_difference(r * r * n, ss), 1e-9);
        EXPECT_LE(oracle::relative_difference(rse(y, f), n * r * r / den), 1e-9);

        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        Vec py(n), pf(n);
        for (std::size_t i = 0; i < n; ++i) {
            py[i] = y[perm[i]];
            pf[i] = f[perm[i]];
        }
        EXPECT_NEAR(rmse(py, pf), r, 1e-12);
        EXPECT_NEAR(mae(py, pf), mae(y, f), 1e-12);
        EXPECT_NEAR(mpe(py, pf), mpe(y, f), 1e-10);
        EXPECT_NEAR(rse(py, pf), rse(y, f), 1e-12);
        EXPECT_GE(r, 0.0);
        EXPECT_GE(mae(y, f), 0.0);
        EXPECT_GE(rse(y, f), 0.0);
    }
}

TEST(Evaluate, UndefinedMetricsAreMarked) {
    const auto rep = evaluate(Vec{0, 1, 2}, Vec{0, 1, 2});
    EXPECT_EQ(rep.rmse, 0.0);
    EXPECT_EQ(rep.r2, 1.0);
    EXPECT_FALSE(rep.mpe.has_value());
    EXPECT_FALSE(rep.notes.empty());
    EXPECT_EQ(rep.n, 3u);
    const auto flat = evaluate(Vec{2, 2}, Vec{1, 3});
    EXPECT_FALSE(flat.r2.has_value());
    EXPECT_FALSE(flat.rse.has_value());
    EXPECT_EQ(flat.mpe, 0.0);
}

TEST(EvaluateAll, PerfectAndMeanPredictors) {
    data::Dataset d;
    d.feature_names = {"x"};
    d.target_name = "y";
    for (int i = 1; i <= 8; ++i) {
        d.features.push_back(i);
        d.target.push_back(2.0 * i + 1.0);
    }
    auto perfect = net::init_network(1, {}, net::Activation::linear, net::Activation::linear, {0.0, 0});
    perfect.layers[0].weights = {2.0};
    perfect.layers[0].biases = {1.0};
    const std::vector<std::size_t> train = {0, 2, 4, 6}, test = {1, 3, 5, 7};
    const auto rep = evaluate_all(perfect, d, train, test);
    for (const auto* r : {&rep.train, &rep.test}) {
        EXPECT_EQ(r->rmse, 0.0);
        EXPECT_EQ(r->mae, 0.0);
        EXPECT_EQ(r->rse, 0.0);
        EXPECT_EQ(r->mpe, 0.0);
        EXPECT_EQ(r->r2, 1.0);
        EXPECT_EQ(r->n, 4u);
    }

    auto mean = net::init_network(1, {}, net::Activation::linear, net::Activation::linear, {0.0, 0});
    double m = 0;
    for (auto r : train) m += d.target[r];
    mean.layers[0].biases = {m / 4};
    const auto base = evaluate_all(mean, d, train, test);
    EXPECT_DOUBLE_EQ(*base.train.rse, 1.0);
    EXPECT_DOUBLE_EQ(*base.train.r2, 0.0);
}

TEST(Table, TenColumnsInOrder) {
    EXPECT_EQ(table_header(),
              "RMSE-train,RMSE-test,R2-train,R2-test,MAE-train,MAE-test,MPE-train,MPE-test,RSE-train,RSE-test");
    SplitReports rep{evaluate(Vec{1, 2, 3}, Vec{1, 2, 4}), evaluate(Vec{0, 1}, Vec{0, 1})};
    const auto row = table_row(rep);
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 9);
    EXPECT_NE(row.find("NA"), std::string::npos);
    const auto j = to_json(rep);
    EXPECT_TRUE(j.at("test").at("mpe").is_null());
    EXPECT_EQ(j.at("train").at("rse"), 0.5);
}
