#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace nnbench::data {

struct SplitIndices {
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;

    // FNV-1a over both index lists; equal splits hash equal.
    std::uint64_t hash() const noexcept;
};

enum class ResampleScheme { repeated_random_split, k_fold };

struct ResamplePlan {
    ResampleScheme scheme = ResampleScheme::repeated_random_split;
    std::size_t runs = 25;
    // Train fraction in (0,1) for repeated random splits.
    double train_fraction = 0.76;
    // Number of folds for k-fold.
    std::size_t folds = 5;
    std::uint64_t seed = 0;

    // Throws ConfigError when the plan is invalid for `n` rows.
    void validate(std::size_t n) const;
};

std::string to_string(ResampleScheme scheme);
ResampleScheme parse_resample_scheme(const std::string& name);

// Uniform random permutation of 0..n-1 determined by seed; the first
// `train_count` entries train, the rest test. Both lists are sorted.
SplitIndices split_train_test(std::size_t n, std::size_t train_count, std::uint64_t seed);

// Repeated random splits: `runs` independent splits with per-run seeds.
// k-fold: `runs` repetitions of a shuffled k-fold partition, so runs=1 gives
// exactly k splits. Fold sizes differ by at most one, larger folds first.
std::vector<SplitIndices> make_resamples(std::size_t n, const ResamplePlan& plan);

// Training row count used for a fraction split (rounded, clamped to 1..n-1).
std::size_t train_count_for_fraction(std::size_t n, double fraction);

nlohmann::json to_json(const ResamplePlan& plan);
ResamplePlan plan_from_json(const nlohmann::json& j);

}  // namespace nnbench::data
