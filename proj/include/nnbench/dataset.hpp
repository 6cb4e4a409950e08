#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace nnbench::data {

/// Descriptor matrix plus activity target.
///
/// Features are stored row-major (`rows() * cols()` values). The target is
/// kept separate and is never touched by feature scaling. `metadata` carries
/// free-form provenance such as a synthetic generator recipe.
struct Dataset {
    std::vector<double> features;
    std::vector<double> target;
    std::vector<std::string> feature_names;
    std::string target_name;
    nlohmann::json metadata = nlohmann::json::object();

    std::size_t rows() const noexcept { return target.size(); }
    std::size_t cols() const noexcept { return feature_names.size(); }

    std::span<const double> row(std::size_t r) const {
        return {features.data() + r * cols(), cols()};
    }

    double at(std::size_t r, std::size_t c) const { return features[r * cols() + c]; }

    // Throws DataError if any documented invariant is violated.
    void validate() const;
};

// Loads a headered CSV. Every column other than `target_column` becomes a
// feature, in file order.
Dataset load_csv(const std::filesystem::path& path, const std::string& target_column);

// Same as load_csv but from an in-memory document; `source` names it in errors.
Dataset parse_csv(std::string_view text, const std::string& target_column,
                  const std::string& source = "<memory>");

// Features first, target last. Values use shortest round-trip formatting.
std::string to_csv(const Dataset& data);

std::vector<std::size_t> all_rows(const Dataset& data);

// Extracts target values for the given rows.
std::vector<double> targets_of(const Dataset& data, std::span<const std::size_t> rows);

}  // namespace nnbench::data
