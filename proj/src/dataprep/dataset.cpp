#include "nnbench/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "nnbench/error.hpp"

namespace nnbench::data {

namespace {

// Splits one CSV record starting at `pos`. Handles double-quoted fields with
// "" escapes; advances `pos` past the record terminator.
std::vector<std::string> read_record(std::string_view text, std::size_t& pos) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    while (pos < text.size()) {
        const char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field.push_back('"');
                    pos += 2;
                    continue;
                }
                quoted = false;
            } else {
                field.push_back(c);
            }
            ++pos;
            continue;
        }
        if (c == '"' && !field_started) {
            quoted = true;
            field_started = true;
            ++pos;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            field_started = false;
            ++pos;
        } else if (c == '\r' || c == '\n') {
            ++pos;
            if (c == '\r' && pos < text.size() && text[pos] == '\n') {
                ++pos;
            }
            break;
        } else {
            field.push_back(c);
            field_started = true;
            ++pos;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool parse_real(std::string_view cell, double& out) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return false;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc{} && ptr == cell.data() + cell.size() && std::isfinite(out);
}

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

}  // namespace

void Dataset::validate() const {
    const std::size_t n = rows();
    const std::size_t p = cols();
    if (n < 2) throw DataError("dataset needs at least 2 rows, got " + std::to_string(n));
    if (p < 1) throw DataError("dataset needs at least 1 feature column");
    if (features.size() != n * p) {
        throw DataError("feature matrix has " + std::to_string(features.size()) +
                        " values, expected " + std::to_string(n * p));
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (!std::isfinite(features[i])) {
            throw DataError("non-finite feature at row " + std::to_string(i / p) + ", column '" +
                            feature_names[i % p] + "'");
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        if (!std::isfinite(target[r])) throw DataError("non-finite target at row " + std::to_string(r));
    }
    std::set<std::string> seen;
    for (const auto& name : feature_names) {
        if (!seen.insert(name).second) throw DataError("duplicate feature name '" + name + "'");
    }
}

Dataset parse_csv(std::string_view text, const std::string& target_column, const std::string& source) {
    std::size_t pos = 0;
    if (text.empty()) throw DataError(source + ": empty file");
    // Tolerate a UTF-8 byte order mark.
    if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;

    auto header = read_record(text, pos);
    for (auto& h : header) h = std::string(trim(h));

    std::size_t target_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == target_column) {
            target_idx = i;
            break;
        }
    }
    if (target_idx == header.size()) {
        throw DataError(source + ": target column '" + target_column + "' not found in header");
    }

    Dataset data;
    data.target_name = target_column;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i != target_idx) data.feature_names.push_back(header[i]);
    }

    std::size_t line = 1;
    while (pos < text.size()) {
        ++line;
        const auto record = read_record(text, pos);
        if (record.size() == 1 && trim(record[0]).empty()) continue;
        if (record.size() != header.size()) {
            throw DataError(source + ": row " + std::to_string(line) + " has " +
                            std::to_string(record.size()) + " cells, header has " +
                            std::to_string(header.size()));
        }
        for (std::size_t i = 0; i < record.size(); ++i) {
            double v = 0.0;
            if (!parse_real(record[i], v)) {
                throw DataError(source + ": non-numeric cell '" + record[i] + "' at row " +
                                std::to_string(line) + ", column '" + header[i] + "'");
            }
            if (i == target_idx) data.target.push_back(v);
            else data.features.push_back(v);
        }
    }
    if (data.rows() < 2) {
        throw DataError(source + ": need at least 2 data rows, found " + std::to_string(data.rows()));
    }
    data.validate();
    return data;
}

Dataset load_csv(const std::filesystem::path& path, const std::string& target_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), target_column, path.string());
}

std::string to_csv(const Dataset& data) {
    std::string out;
    for (const auto& name : data.feature_names) {
        out += quote_if_needed(name);
        out += ',';
    }
    out += quote_if_needed(data.target_name);
    out += '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (double v : data.row(r)) {
            out += format_real(v);
            out += ',';
        }
        out += format_real(data.target[r]);
        out += '\n';
    }
    return out;
}

std::vector<std::size_t> all_rows(const Dataset& data) {
    std::vector<std::size_t> rows(data.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return rows;
}

std::vector<double> targets_of(const Dataset& data, std::span<const std::size_t> rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (auto r : rows) {
        if (r >= data.rows()) throw DimensionError("row index " + std::to_string(r) + " out of range");
        out.push_back(data.target[r]);
    }
    return out;
}

}  // namespace nnbench::data
