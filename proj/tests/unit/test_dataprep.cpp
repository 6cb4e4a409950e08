#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "nnbench/dataset.hpp"
#include "nnbench/error.hpp"
#include "nnbench/resample.hpp"
#include "nnbench/rng.hpp"
#include "nnbench/scaling.hpp"
#include "nnbench/synthetic.hpp"

using namespace nnbench;
using namespace nnbench::data;

namespace {

Dataset small(std::vector<std::vector<double>> cols, std::vector<double> target) {
    Dataset d;
    d.target = std::move(target);
    for (std::size_t c = 0; c < cols.size(); ++c) d.feature_names.push_back("c" + std::to_string(c));
    d.target_name = "y";
    for (std::size_t r = 0; r < d.target.size(); ++r) {
        for (auto& col : cols) d.features.push_back(col[r]);
    }
    return d;
}

void expect_partition(const SplitIndices& s, std::size_t n) {
    std::vector<int> seen(n, 0);
    for (auto r : s.train_rows) seen.at(r)++;
    for (auto r : s.test_rows) seen.at(r)++;
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(seen[i], 1) << "row " << i;
    EXPECT_FALSE(s.train_rows.empty());
    EXPECT_FALSE(s.test_rows.empty());
}

}  // namespace

TEST(Rng, SameSeedSameStream) {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        differs |= x != c.next_u64();
    }
    EXPECT_TRUE(differs);
}

TEST(Rng, UniformAndBelowRanges) {
    Rng rng(1);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        ASSERT_LT(rng.below(7), 7u);
    }
    EXPECT_NEAR(sum / 20000.0, 0.5, 0.01);
}

TEST(Rng, NormalMoments) {
    Rng rng(5);
    double s = 0.0, s2 = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 0.02);
    EXPECT_NEAR(s2 / n, 1.0, 0.03);
}

TEST(Rng, DerivedSeedsDiffer) {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t r = 0; r < 50; ++r) {
        for (std::uint64_t m = 0; m < 5; ++m) seeds.insert(derive_seed(9, r, m));
    }
    EXPECT_EQ(seeds.size(), 250u);
    EXPECT_EQ(derive_seed(9, 3, 1), derive_seed(9, 3, 1));
}

TEST(LoadCsv, ThreeRowsTwoFeatures) {
    const auto d = parse_csv("d1,d2,act\n1,2,3\n4,5,6\n7,8,9\n", "act");
    EXPECT_EQ(d.rows(), 3u);
    EXPECT_EQ(d.cols(), 2u);
    EXPECT_EQ(d.feature_names, (std::vector<std::string>{"d1", "d2"}));
    EXPECT_EQ(d.target, (std::vector<double>{3, 6, 9}));
    EXPECT_EQ(d.at(1, 0), 4.0);
    EXPECT_EQ(d.at(2, 1), 8.0);
}

TEST(LoadCsv, TargetInMiddleKeepsFeatureOrder) {
    const auto d = parse_csv("a,y,b\r\n1,10,2\r\n3,30,4\r\n", "y");
    EXPECT_EQ(d.feature_names, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(d.features, (std::vector<double>{1, 2, 3, 4}));
    EXPECT_EQ(d.target, (std::vector<double>{10, 30}));
}

TEST(LoadCsv, QuotedHeaderAndBom) {
    const auto d = parse_csv("\xEF\xBB\xBF\"d,1\",\"act\"\n1.5,2\n-3e-2,4\n", "act");
    EXPECT_EQ(d.feature_names[0], "d,1");
    EXPECT_DOUBLE_EQ(d.at(1, 0), -0.03);
}

TEST(LoadCsv, NonNumericCellNamed) {
    try {
        parse_csv("d1,d2,act\n1,2,3\n4,abc,6\n", "act");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("abc"), std::string::npos) << msg;
        EXPECT_NE(msg.find("d2"), std::string::npos) << msg;
        EXPECT_NE(msg.find("row"), std::string::npos) << msg;
    }
}

TEST(LoadCsv, Errors) {
    EXPECT_THROW(parse_csv("d1,act\n1,2\n3,4\n", "missing"), DataError);
    EXPECT_THROW(parse_csv("d1,act\n1,2\n", "act"), DataError);
    EXPECT_THROW(parse_csv("d1,act\n1,2\n3\n", "act"), DataError);
    EXPECT_THROW(parse_csv("d1,act\n1,2\n3,nan\n", "act"), DataError);
    EXPECT_THROW(parse_csv("d1,d1,act\n1,2,3\n3,4,5\n", "act"), DataError);
    EXPECT_THROW(load_csv("/nonexistent/file.csv", "act"), DataError);
}

TEST(LoadCsv, DescriptorShapeFileRoundTrip) {
    SyntheticSpec spec;
    spec.seed = 3;
    const auto d = gen_synthetic(spec);
    const auto path = std::filesystem::temp_directory_path() / "nnbench_shape.csv";
    {
        std::ofstream out(path);
        out << to_csv(d);
    }
    const auto back = load_csv(path, "activity");
    EXPECT_EQ(back.rows(), 100u);
    EXPECT_EQ(back.cols(), 234u);
    EXPECT_EQ(back.features, d.features);
    EXPECT_EQ(back.target, d.target);
    std::filesystem::remove(path);
}

TEST(Scaling, MinMaxAndConstantColumns) {
    const auto d = small({{2, 4, 6}, {5, 5, 5}}, {0, 0, 0});
    const auto p = fit_range_scaler(d, all_rows(d));
    EXPECT_EQ(p.min[0], 2.0);
    EXPECT_EQ(p.max[0], 6.0);
    EXPECT_EQ(p.constant_columns, (std::vector<std::size_t>{1}));
    const auto s = apply_range_scaler(d, p);
    EXPECT_EQ(s.at(0, 0), 0.0);
    EXPECT_EQ(s.at(1, 0), 0.5);
    EXPECT_EQ(s.at(2, 0), 1.0);
    for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(s.at(r, 1), 0.0);
    EXPECT_EQ(s.target, d.target);
    EXPECT_THROW(fit_range_scaler(d, std::vector<std::size_t>{}), ConfigError);
}

TEST(Scaling, FitOnTrainOnlyLetsTestEscapeUnitInterval) {
    const auto d = small({{0, 10, 20, 30}}, {1, 2, 3, 4});
    const std::vector<std::size_t> train = {1, 2};
    const auto s = apply_range_scaler(d, fit_range_scaler(d, train));
    EXPECT_LT(s.at(0, 0), 0.0);
    EXPECT_GT(s.at(3, 0), 1.0);
}

TEST(Scaling, IdempotentOnScaledData) {
    const auto d = gen_synthetic({20, 6, 2, 0.1, 0.5, 8});
    const auto s1 = apply_range_scaler(d, fit_range_scaler(d, all_rows(d)));
    const auto s2 = apply_range_scaler(s1, fit_range_scaler(s1, all_rows(s1)));
    for (std::size_t i = 0; i < s1.features.size(); ++i) EXPECT_NEAR(s1.features[i], s2.features[i], 1e-15);
}

TEST(Scaling, RoundTripWithinRelativeTolerance) {
    Rng rng(11);
    Dataset d;
    const std::size_t n = 50, p = 8;
    for (std::size_t c = 0; c < p; ++c) d.feature_names.push_back("f" + std::to_string(c));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < p; ++c) d.features.push_back(rng.uniform(-1e3, 1e3) * std::pow(10.0, c % 4));
        d.target.push_back(0.0);
    }
    const auto params = fit_range_scaler(d, all_rows(d));
    const auto back = invert_range_scaler(apply_range_scaler(d, params), params);
    for (std::size_t i = 0; i < d.features.size(); ++i) {
        EXPECT_LE(std::abs(back.features[i] - d.features[i]), 1e-12 * std::abs(d.features[i]) + 1e-300);
    }
}

TEST(Scaling, DimensionMismatch) {
    const auto a = small({{1, 2}}, {0, 0});
    const auto b = small({{1, 2}, {3, 4}}, {0, 0});
    EXPECT_THROW(apply_range_scaler(b, fit_range_scaler(a, all_rows(a))), DimensionError);
}

TEST(Scaling, TargetScalingInverse) {
    const std::vector<double> y = {3, 7, 5};
    const auto t = TargetScaling::fit(y);
    EXPECT_EQ(t.apply(3), 0.0);
    EXPECT_EQ(t.apply(7), 1.0);
    EXPECT_DOUBLE_EQ(t.invert(t.apply(5.5)), 5.5);
}

TEST(Split, SeventySixTwentyFour) {
    const auto s = split_train_test(100, 76, 1);
    EXPECT_EQ(s.train_rows.size(), 76u);
    EXPECT_EQ(s.test_rows.size(), 24u);
    expect_partition(s, 100);
    EXPECT_TRUE(std::is_sorted(s.train_rows.begin(), s.train_rows.end()));
    EXPECT_EQ(train_count_for_fraction(100, 0.76), 76u);
}

TEST(Split, DeterministicAndSeedSensitive) {
    const auto a = split_train_test(100, 76, 9);
    const auto b = split_train_test(100, 76, 9);
    const auto c = split_train_test(100, 76, 10);
    EXPECT_EQ(a.train_rows, b.train_rows);
    EXPECT_EQ(a.hash(), b.hash());
    EXPECT_NE(a.train_rows, c.train_rows);
}

TEST(Split, MinimalAndOutOfRange) {
    const auto s = split_train_test(2, 1, 0);
    EXPECT_EQ(s.train_rows.size(), 1u);
    EXPECT_EQ(s.test_rows.size(), 1u);
    expect_partition(s, 2);
    EXPECT_THROW(split_train_test(10, 0, 0), ConfigError);
    EXPECT_THROW(split_train_test(10, 10, 0), ConfigError);
}

TEST(Resample, RepeatedRandomSplits) {
    ResamplePlan plan;
    plan.seed = 4;
    const auto splits = make_resamples(100, plan);
    ASSERT_EQ(splits.size(), 25u);
    std::set<std::uint64_t> hashes;
    for (const auto& s : splits) {
        EXPECT_EQ(s.train_rows.size(), 76u);
        expect_partition(s, 100);
        hashes.insert(s.hash());
    }
    EXPECT_EQ(hashes.size(), 25u);
    const auto again = make_resamples(100, plan);
    for (std::size_t i = 0; i < 25; ++i) EXPECT_EQ(again[i].hash(), splits[i].hash());
}

TEST(Resample, FiveFoldsOfTwenty) {
    ResamplePlan plan;
    plan.scheme = ResampleScheme::k_fold;
    plan.runs = 1;
    plan.folds = 5;
    const auto splits = make_resamples(100, plan);
    ASSERT_EQ(splits.size(), 5u);
    std::vector<int> tested(100, 0);
    for (const auto& s : splits) {
        EXPECT_EQ(s.test_rows.size(), 20u);
        expect_partition(s, 100);
        for (auto r : s.test_rows) tested[r]++;
    }
    for (int t : tested) EXPECT_EQ(t, 1);
}

TEST(Resample, ThreeFoldsOfTen) {
    ResamplePlan plan;
    plan.scheme = ResampleScheme::k_fold;
    plan.runs = 1;
    plan.folds = 3;
    const auto splits = make_resamples(10, plan);
    ASSERT_EQ(splits.size(), 3u);
    std::vector<std::size_t> sizes;
    for (const auto& s : splits) sizes.push_back(s.test_rows.size());
    EXPECT_EQ(sizes, (std::vector<std::size_t>{4, 3, 3}));
}

TEST(Resample, RepeatedKFoldCoversEachRepetition) {
    ResamplePlan plan;
    plan.scheme = ResampleScheme::k_fold;
    plan.runs = 3;
    plan.folds = 4;
    plan.seed = 2;
    const auto splits = make_resamples(13, plan);
    ASSERT_EQ(splits.size(), 12u);
    for (std::size_t rep = 0; rep < 3; ++rep) {
        std::vector<int> tested(13, 0);
        for (std::size_t f = 0; f < 4; ++f) {
            for (auto r : splits[rep * 4 + f].test_rows) tested[r]++;
        }
        for (int t : tested) EXPECT_EQ(t, 1);
    }
}

TEST(Resample, InvalidPlans) {
    ResamplePlan plan;
    plan.train_fraction = 1.0;
    EXPECT_THROW(make_resamples(10, plan), ConfigError);
    plan = {};
    plan.runs = 0;
    EXPECT_THROW(make_resamples(10, plan), ConfigError);
    plan = {};
    plan.scheme = ResampleScheme::k_fold;
    plan.folds = 11;
    EXPECT_THROW(make_resamples(10, plan), ConfigError);
    plan.folds = 1;
    EXPECT_THROW(make_resamples(10, plan), ConfigError);
}

TEST(Resample, PlanJsonRoundTrip) {
    ResamplePlan plan;
    plan.scheme = ResampleScheme::k_fold;
    plan.runs = 2;
    plan.folds = 7;
    plan.seed = 0xfeedfacecafebeefULL;
    const auto back = plan_from_json(to_json(plan));
    EXPECT_EQ(back.scheme, plan.scheme);
    EXPECT_EQ(back.runs, 2u);
    EXPECT_EQ(back.folds, 7u);
    EXPECT_EQ(back.seed, plan.seed);
}

TEST(Synthetic, DescriptorShapeAndDeterminism) {
    SyntheticSpec spec;
    spec.seed = 7;
    const auto a = gen_synthetic(spec);
    const auto b = gen_synthetic(spec);
    EXPECT_EQ(a.rows(), 100u);
    EXPECT_EQ(a.cols(), 234u);
    EXPECT_EQ(a.features, b.features);
    EXPECT_EQ(a.target, b.target);
    EXPECT_EQ(to_csv(a), to_csv(b));
    for (double v : a.features) {
        ASSERT_GE(v, 0.0);
        ASSERT_LT(v, 1.0);
    }
    EXPECT_TRUE(a.metadata.contains("coefficients"));
    spec.seed = 8;
    EXPECT_NE(gen_synthetic(spec).target, a.target);
}

TEST(Synthetic, NoiselessLinearIsExactlyLinear) {
    SyntheticSpec spec{60, 12, 4, 0.0, 0.0, 21};
    const auto d = gen_synthetic(spec);
    const auto beta = d.metadata.at("coefficients").get<std::vector<double>>();
    const double offset = d.metadata.at("offset").get<double>();
    ASSERT_EQ(beta.size(), 4u);
    for (std::size_t r = 0; r < d.rows(); ++r) {
        double s = offset;
        for (std::size_t j = 0; j < 4; ++j) s += beta[j] * d.at(r, j);
        EXPECT_NEAR(d.target[r], s, 1e-12);
    }
}

TEST(Synthetic, InvalidDimensions) {
    EXPECT_THROW(gen_synthetic({100, 0, 0, 0.1, 0.5, 1}), ConfigError);
    EXPECT_THROW(gen_synthetic({100, 5, 6, 0.1, 0.5, 1}), ConfigError);
    EXPECT_THROW(gen_synthetic({100, 5, 0, 0.1, 0.5, 1}), ConfigError);
    EXPECT_THROW(gen_synthetic({1, 5, 2, 0.1, 0.5, 1}), ConfigError);
    EXPECT_THROW(gen_synthetic({10, 5, 2, -1.0, 0.5, 1}), ConfigError);
}
