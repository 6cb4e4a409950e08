#include "nnbench/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nnbench/error.hpp"
#include "nnbench/rng.hpp"

namespace nnbench::data {

std::uint64_t SplitIndices::hash() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    feed(train_rows.size());
    for (auto r : train_rows) feed(r);
    feed(test_rows.size());
    for (auto r : test_rows) feed(r);
    return h;
}

std::string to_string(ResampleScheme scheme) {
    return scheme == ResampleScheme::k_fold ? "k-fold" : "repeated-random-split";
}

ResampleScheme parse_resample_scheme(const std::string& name) {
    if (name == "k-fold" || name == "kfold" || name == "cv") return ResampleScheme::k_fold;
    if (name == "repeated-random-split" || name == "random" || name == "split") {
        return ResampleScheme::repeated_random_split;
    }
    throw ConfigError("unknown resampling scheme '" + name + "'");
}

void ResamplePlan::validate(std::size_t n) const {
    if (runs == 0) throw ConfigError("resample plan needs at least one run");
    if (n < 2) throw ConfigError("resampling needs at least 2 rows");
    if (scheme == ResampleScheme::repeated_random_split) {
        if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
            throw ConfigError("train fraction must lie in (0, 1)");
        }
    } else if (folds < 2 || folds > n) {
        throw ConfigError("k-fold needs 2 <= k <= n, got k=" + std::to_string(folds));
    }
}

std::size_t train_count_for_fraction(std::size_t n, double fraction) {
    const auto raw = static_cast<long long>(std::llround(fraction * static_cast<double>(n)));
    return static_cast<std::size_t>(std::clamp<long long>(raw, 1, static_cast<long long>(n) - 1));
}

SplitIndices split_train_test(std::size_t n, std::size_t train_count, std::uint64_t seed) {
    if (train_count == 0 || train_count >= n) {
        throw ConfigError("train count " + std::to_string(train_count) + " must lie in (0, " +
                          std::to_string(n) + ")");
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(perm);
    SplitIndices split;
    split.train_rows.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(train_count));
    split.test_rows.assign(perm.begin() + static_cast<std::ptrdiff_t>(train_count), perm.end());
    std::sort(split.train_rows.begin(), split.train_rows.end());
    std::sort(split.test_rows.begin(), split.test_rows.end());
    return split;
}

std::vector<SplitIndices> make_resamples(std::size_t n, const ResamplePlan& plan) {
    plan.validate(n);
    std::vector<SplitIndices> splits;
    if (plan.scheme == ResampleScheme::repeated_random_split) {
        const std::size_t train_count = train_count_for_fraction(n, plan.train_fraction);
        splits.reserve(plan.runs);
        for (std::size_t run = 0; run < plan.runs; ++run) {
            splits.push_back(split_train_test(n, train_count, derive_seed(plan.seed, run)));
        }
        return splits;
    }

    const std::size_t k = plan.folds;
    splits.reserve(plan.runs * k);
    for (std::size_t rep = 0; rep < plan.runs; ++rep) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        Rng rng(derive_seed(plan.seed, rep));
        rng.shuffle(perm);
        std::size_t start = 0;
        for (std::size_t fold = 0; fold < k; ++fold) {
            const std::size_t size = n / k + (fold < n % k ? 1 : 0);
            SplitIndices split;
            split.test_rows.assign(perm.begin() + static_cast<std::ptrdiff_t>(start),
                                   perm.begin() + static_cast<std::ptrdiff_t>(start + size));
            split.train_rows.reserve(n - size);
            for (std::size_t i = 0; i < n; ++i) {
                if (i < start || i >= start + size) split.train_rows.push_back(perm[i]);
            }
            std::sort(split.train_rows.begin(), split.train_rows.end());
            std::sort(split.test_rows.begin(), split.test_rows.end());
            splits.push_back(std::move(split));
            start += size;
        }
    }
    return splits;
}

nlohmann::json to_json(const ResamplePlan& plan) {
    return {
        {"scheme", to_string(plan.scheme)},
        {"runs", plan.runs},
        {"train_fraction", plan.train_fraction},
        {"folds", plan.folds},
        {"seed", plan.seed},
    };
}

ResamplePlan plan_from_json(const nlohmann::json& j) {
    ResamplePlan plan;
    plan.scheme = parse_resample_scheme(j.at("scheme").get<std::string>());
    plan.runs = j.at("runs").get<std::size_t>();
    plan.train_fraction = j.at("train_fraction").get<double>();
    plan.folds = j.at("folds").get<std::size_t>();
    plan.seed = j.at("seed").get<std::uint64_t>();
    return plan;
}

}  // namespace nnbench::data
