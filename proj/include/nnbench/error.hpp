#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nnbench {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (CSV contents, result files).
class DataError : public Error {
public:
    using Error::Error;
};

// Shapes that do not chain: vector lengths, column counts, parameter layouts.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Invalid configuration or argument outside its documented domain.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Training produced a non-finite parameter or objective.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, std::size_t epoch)
        : Error(what), epoch_(epoch) {}

    // 1-based epoch at which divergence was detected, 0 when unknown.
    std::size_t epoch() const noexcept { return epoch_; }

private:
    std::size_t epoch_ = 0;
};

// A statistic that cannot be computed (insufficient runs, quadrature failure).
class StatsError : public Error {
public:
    using Error::Error;
};

}  // namespace nnbench
