#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "obliv/kernel.hpp"
#include "obliv/partition.hpp"
#include "obliv/types.hpp"

namespace obliv {

// Plug-in estimator of the Hilbert-space-valued conditional expectation of
// the feature map given the sensitive value, represented as uniform weights
// over an anchor sample. A cell's conditional mean is the average of the
// feature maps of the anchors whose sensitive value falls into that cell;
// an empty cell represents the zero element, so every inner product with it
// is 0. All quantities reduce to kernel evaluations against the anchors:
//
//   xi(x, u)     = <phi(x), mean of cell u>        = (1/N_u) sum_{j in I_u} k(x, x_j)
//   rho(x)       = <phi(x), global mean>           = (1/m)   sum_j         k(x, x_j)
//   o_cell(u, v) = <mean of cell u, mean of cell v>
//   tau(u)       = <mean of cell u, global mean>
//   big_m()      = |global mean|^2
//
// The estimator never sees labels. Cell-level aggregates (o, tau, M) are
// memoized on first use; computing them is one pass over all anchor pairs
// in a fixed order, so repeated or concurrent computation yields identical
// values. Immutable after fit.
class CondMeanEstimator {
public:
    static CondMeanEstimator fit(KernelSpec kernel, Partition partition, Matrix X, Matrix S);

    double xi(RowRef x, std::size_t cell) const;
    double rho(RowRef x) const;
    double o_cell(std::size_t u, std::size_t v) const;
    double tau(std::size_t u) const;
    double big_m() const;

    // One pass over the anchors filling xi(x, u) for every cell u together
    // with rho(x). In the single-cell case the two accumulators receive the
    // same terms in the same order, so xi == rho to the bit.
    void xi_rho(RowRef x, RowVector& xi_out, double& rho_out) const;

    // Row r of Xi holds xi(Q.row(r), .); rho[r] = rho(Q.row(r)).
    void xi_rho_matrix(const Matrix& Q, Matrix& Xi, Vector& rho_out) const;

    std::size_t cell_count() const { return partition_.cell_count(); }
    Index anchor_count() const { return anchors_x_.rows(); }
    Index cell_size(std::size_t u) const { return static_cast<Index>(members_[u].size()); }

    const KernelSpec& kernel() const { return kernel_; }
    const Partition& partition() const { return partition_; }
    const Matrix& anchors_x() const { return anchors_x_; }
    const Matrix& anchors_s() const { return anchors_s_; }
    const std::vector<std::size_t>& anchor_cell() const { return anchor_cell_; }
    const std::vector<std::vector<Index>>& cell_members() const { return members_; }

private:
    CondMeanEstimator() = default;

    struct Aggregates {
        Matrix o;     // cells x cells
        Vector tau;   // cells
        double big_m = 0.0;
    };
    const Aggregates& aggregates() const;

    KernelSpec kernel_;
    Partition partition_ = Partition::categorical({0.0});
    Matrix anchors_x_, anchors_s_;
    std::vector<std::size_t> anchor_cell_;
    std::vector<std::vector<Index>> members_;

    mutable std::shared_ptr<const Aggregates> agg_;
    mutable std::shared_ptr<std::mutex> agg_mutex_ = std::make_shared<std::mutex>();
};

} // namespace obliv
