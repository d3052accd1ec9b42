#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "obliv/cond_mean.hpp"
#include "obliv/types.hpp"

namespace obliv {

// Oblivious Gram matrix: entry (i, j) is the RKHS inner product of the
// oblivious features Z_i and Z_j of the training rows. Symmetric by
// construction and positive semi-definite up to round-off. The train-side
// tables (cell index, xi row, rho) are retained so prediction-time
// cross-products reuse them.
struct ObliviousGram {
    Matrix o;
    Matrix train_x, train_s;
    std::vector<std::size_t> cell_of;
    Matrix xi_train; // n x cells
    Vector rho_train;

    Index size() const { return o.rows(); }
};

// The oblivious feature transform Z = phi(X) - E^S phi(X) + E(phi(X)) with
// the conditional expectation replaced by the plug-in estimate. Z is never
// materialized; every quantity is an inner product expanded into kernel
// evaluations against the estimator's anchors:
//
//   <Z, Z'> = k(x,x') - xi(x, cell(s')) - xi(x', cell(s)) + o(cell(s), cell(s'))
//             + rho(x) + rho(x') + M - tau(cell(s)) - tau(cell(s'))
//
// With a single-cell partition every correction cancels and the transform
// collapses to the plain kernel. Training-time assignment is strict;
// prediction-time assignment clamps out-of-domain sensitive values to the
// nearest cell and counts them in clamp_tally().
class ObliviousTransformer {
public:
    explicit ObliviousTransformer(std::shared_ptr<const CondMeanEstimator> estimator);

    const CondMeanEstimator& estimator() const { return *est_; }

    // <Z(x,s), Z(x',s')>; strict assignment.
    double z_dot(RowRef x, RowRef s, RowRef x2, RowRef s2) const;

    // |Z(x,s)|^2; clamps (prediction-path semantics).
    double z_norm_sq(RowRef x, RowRef s) const;

    // Builds the n x n oblivious Gram of the given training rows.
    ObliviousGram gram_matrix(const Matrix& X, const Matrix& S) const;

    // <Z_new, Z_i> for one new point against all training rows.
    Vector cross(const ObliviousGram& g, RowRef x, RowRef s) const;

    // Batch version: row r holds cross(g, Q.row(r), T.row(r)).
    Matrix cross_matrix(const ObliviousGram& g, const Matrix& Q, const Matrix& T) const;

    // <phi(x_train), Z_new>, the raw-feature cross-product used by the
    // Markov-oblivious prediction path:
    //   k(x_train, x) - xi(x_train, cell(s)) + rho(x_train).
    double raw_cross(RowRef x_train, RowRef x, RowRef s) const;

    // Batch version: entry (r, i) = raw_cross(train_X.row(i), Q.row(r), T.row(r)).
    Matrix raw_cross_matrix(const Matrix& train_x, const Matrix& Q, const Matrix& T) const;

    // Count of prediction-time sensitive values that fell outside the
    // partition domain and were clamped.
    std::int64_t clamp_tally() const { return clamp_tally_->load(); }

private:
    std::size_t clamped_cell(RowRef s) const;

    std::shared_ptr<const CondMeanEstimator> est_;
    std::shared_ptr<std::atomic<std::int64_t>> clamp_tally_;
};

} // namespace obliv
