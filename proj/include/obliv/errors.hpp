#pragma once

#include <stdexcept>
#include <string>

namespace obliv {

// Exit codes used by the CLI: 0 success, 2 config error, 3 data error,
// 4 numerical error.
enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_data = 3,
    exit_numeric = 4,
};

// Bad configuration: unknown keys, values out of range, empty grids.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad inputs: dimension mismatches, malformed files, schema violations.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// A sensitive value that falls outside the partition domain.
class AssignmentError : public DataError {
public:
    AssignmentError(const std::string& msg, double offending)
        : DataError(msg), offending_(offending) {}
    double offending_value() const { return offending_; }

private:
    double offending_;
};

// Solver breakdown, non-finite intermediate results.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace obliv
