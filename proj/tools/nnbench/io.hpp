#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace nnbench::cli {

// Writes through a temporary sibling and renames it into place, so readers
// never observe a partially written file. Creates missing parent directories.
void write_atomic(const std::filesystem::path& path, std::string_view contents);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// Throws DataError naming the path when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

// Lower-case hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

// Current UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

// $NNBENCH_OUT_DIR when set and non-empty, "." otherwise.
std::filesystem::path default_out_dir();

}  // namespace nnbench::cli
