#include "obliv/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "obliv/errors.hpp"

namespace obliv {
namespace csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

} // namespace

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError(path + ": cannot open file");

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ":1: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Table table;
    table.header = split_line(line);
    const auto cols = static_cast<Index>(table.header.size());
    if (cols == 0) throw DataError(path + ":1: empty header");

    std::vector<double> values;
    Index rows = 0;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (static_cast<Index>(fields.size()) != cols) {
            throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(cols) + " fields, got " +
                            std::to_string(fields.size()));
        }
        for (const auto& f : fields) {
            try {
                std::size_t used = 0;
                double v = std::stod(f, &used);
                if (used != f.size()) throw std::invalid_argument(f);
                if (!std::isfinite(v)) throw std::invalid_argument(f);
                values.push_back(v);
            } catch (const std::exception&) {
                throw DataError(path + ":" + std::to_string(lineno) + ": bad numeric field '" +
                                f + "'");
            }
        }
        ++rows;
    }
    table.data.resize(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            table.data(i, j) = values[static_cast<std::size_t>(i * cols + j)];
        }
    }
    return table;
}

Index find_column(const Table& table, const std::string& name) {
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (table.header[j] == name) return static_cast<Index>(j);
    }
    throw DataError("missing column '" + name + "'");
}

std::vector<Index> prefixed_columns(const Table& table, const std::string& prefix) {
    std::vector<Index> out;
    for (std::size_t k = 0;; ++k) {
        std::string name = prefix + std::to_string(k);
        bool found = false;
        for (std::size_t j = 0; j < table.header.size(); ++j) {
            if (table.header[j] == name) {
                out.push_back(static_cast<Index>(j));
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    if (out.empty()) throw DataError("missing column '" + prefix + "0'");
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_table(const std::string& path, const std::vector<std::string>& header,
                 const Matrix& data) {
    std::ofstream out(path);
    if (!out) throw DataError(path + ": cannot open for writing");
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j) out << ',';
        out << header[j];
    }
    out << '\n';
    for (Index i = 0; i < data.rows(); ++i) {
        for (Index j = 0; j < data.cols(); ++j) {
            if (j) out << ',';
            out << format_double(data(i, j));
        }
        out << '\n';
    }
    if (!out) throw DataError(path + ": write failed");
}

void write_matrix(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw DataError(path + ": cannot open for writing");
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    if (!out) throw DataError(path + ": write failed");
}

void write_dataset(const std::string& path, const Dataset& ds) {
    std::vector<std::string> header;
    Index cols = ds.x.cols() + ds.s.cols();
    for (Index k = 0; k < ds.x.cols(); ++k) header.push_back("x_" + std::to_string(k));
    for (Index k = 0; k < ds.s.cols(); ++k) header.push_back("s_" + std::to_string(k));
    const bool has_y = ds.y.size() == ds.size();
    if (has_y) {
        header.emplace_back("y");
        ++cols;
    }
    if (ds.y_star) {
        header.emplace_back("y_star");
        ++cols;
    }
    Matrix data(ds.size(), cols);
    data.leftCols(ds.x.cols()) = ds.x;
    data.middleCols(ds.x.cols(), ds.s.cols()) = ds.s;
    Index at = ds.x.cols() + ds.s.cols();
    if (has_y) data.col(at++) = ds.y;
    if (ds.y_star) data.col(at) = *ds.y_star;
    write_table(path, header, data);
}

Dataset read_dataset(const std::string& path) {
    Table t = read_table(path);
    auto xcols = prefixed_columns(t, "x_");
    auto scols = prefixed_columns(t, "s_");
    Dataset ds;
    ds.x.resize(t.data.rows(), static_cast<Index>(xcols.size()));
    for (std::size_t k = 0; k < xcols.size(); ++k) {
        ds.x.col(static_cast<Index>(k)) = t.data.col(xcols[k]);
    }
    ds.s.resize(t.data.rows(), static_cast<Index>(scols.size()));
    for (std::size_t k = 0; k < scols.size(); ++k) {
        ds.s.col(static_cast<Index>(k)) = t.data.col(scols[k]);
    }
    for (std::size_t j = 0; j < t.header.size(); ++j) {
        if (t.header[j] == "y") ds.y = t.data.col(static_cast<Index>(j));
        if (t.header[j] == "y_star") ds.y_star = t.data.col(static_cast<Index>(j));
    }
    return ds;
}

} // namespace csv
} // namespace obliv
