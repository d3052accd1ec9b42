#pragma once

#include <string>
#include <vector>

#include "obliv/synthetic.hpp"
#include "obliv/types.hpp"

namespace obliv {
namespace csv {

struct Table {
    std::vector<std::string> header;
    Matrix data;
};

// Reads a comma-separated numeric table with a header row. Errors carry the
// path and 1-based line number.
Table read_table(const std::string& path);

// Column index by exact header name; DataError names the missing column.
Index find_column(const Table& table, const std::string& name);

// Indices of columns named prefix0, prefix1, ... in order; DataError when
// none exist.
std::vector<Index> prefixed_columns(const Table& table, const std::string& prefix);

// 17 significant digits; round-trips doubles exactly.
std::string format_double(double v);

void write_table(const std::string& path, const std::vector<std::string>& header,
                 const Matrix& data);

// Headerless row-major dump (gram debugging).
void write_matrix(const std::string& path, const Matrix& m);

// Dataset files use columns x_0..x_{dx-1}, s_0..s_{ds-1}, y[, y_star].
void write_dataset(const std::string& path, const Dataset& ds);
Dataset read_dataset(const std::string& path);

} // namespace csv
} // namespace obliv
