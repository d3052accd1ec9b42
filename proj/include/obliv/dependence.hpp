#pragma once

#include <functional>
#include <string>
#include <vector>

#include "obliv/oblivious.hpp"
#include "obliv/partition.hpp"
#include "obliv/types.hpp"

namespace obliv {

// Total-variation-style dependence between two finite-valued samples:
//   (1/2) sum_{y,s} | P(y,s) - P(y) P(s) |
// with empirical frequencies. Symmetric in its arguments and invariant
// under relabeling; 0 for a constant sample. Throws DataError on empty or
// mismatched inputs.
double beta_tilde(const Vector& preds, const Vector& sens);

struct CellMeanGap {
    double gap = 0.0; // max |mean(preds|u) - mean(preds|v)| over populated cells
    int populated_cells = 0;
    int empty_cells = 0; // skipped cells, reported rather than silently dropped
};

CellMeanGap cell_mean_gap(const Vector& preds, const std::vector<std::size_t>& cells,
                          std::size_t cell_count);

// Centered empirical covariances between the columns of A and B (both with
// one row per sample); entry (a, b) = cov(A.col(a), B.col(b)). A constant
// column yields an exactly zero row/column.
Matrix covariance_matrix(const Matrix& A, const Matrix& B);

struct ProbeMap {
    std::string name;
    std::function<double(RowRef)> fn;
};

// Cell indicators plus s and s^2 (first coordinate): the quadratic probe
// picks up the directions a polynomial kernel leaves dependent.
std::vector<ProbeMap> default_probe_maps(const Partition& partition);

// Empirical covariance between <phi(x*_a), Z_i> and g_b(S_i) over the eval
// set; entry (a, b) per probe point / test map. Raw values for inspection.
Matrix h_independence_probe(const ObliviousTransformer& t, const Matrix& X, const Matrix& S,
                            const Matrix& probe_points, const std::vector<ProbeMap>& gs);

} // namespace obliv
