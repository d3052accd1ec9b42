#include "obliv/cond_mean.hpp"

#include <atomic>
#include <string>

#include "obliv/errors.hpp"

namespace obliv {

CondMeanEstimator CondMeanEstimator::fit(KernelSpec kernel, Partition partition, Matrix X,
                                         Matrix S) {
    kernel.validate();
    if (X.rows() == 0) throw DataError("cond_mean fit: empty anchor sample");
    if (X.rows() != S.rows()) {
        throw DataError("cond_mean fit: X and S row counts differ (" + std::to_string(X.rows()) +
                        " vs " + std::to_string(S.rows()) + ")");
    }
    CondMeanEstimator est;
    est.kernel_ = kernel;
    est.partition_ = std::move(partition);
    est.anchors_x_ = std::move(X);
    est.anchors_s_ = std::move(S);

    const Index m = est.anchors_x_.rows();
    est.anchor_cell_.resize(static_cast<std::size_t>(m));
    est.members_.assign(est.partition_.cell_count(), {});
    for (Index j = 0; j < m; ++j) {
        std::size_t u = est.partition_.assign(est.anchors_s_.row(j));
        est.anchor_cell_[static_cast<std::size_t>(j)] = u;
        est.members_[u].push_back(j);
    }
    return est;
}

void CondMeanEstimator::xi_rho(RowRef x, RowVector& xi_out, double& rho_out) const {
    const Index m = anchors_x_.rows();
    const std::size_t cells = cell_count();
    xi_out.setZero(static_cast<Index>(cells));
    double rho_acc = 0.0;
    for (Index j = 0; j < m; ++j) {
        double v = eval_kernel(kernel_, x, anchors_x_.row(j));
        xi_out[static_cast<Index>(anchor_cell_[static_cast<std::size_t>(j)])] += v;
        rho_acc += v;
    }
    for (std::size_t u = 0; u < cells; ++u) {
        Index nu = cell_size(u);
        xi_out[static_cast<Index>(u)] = nu > 0 ? xi_out[static_cast<Index>(u)] / nu : 0.0;
    }
    rho_out = rho_acc / static_cast<double>(m);
}

void CondMeanEstimator::xi_rho_matrix(const Matrix& Q, Matrix& Xi, Vector& rho_out) const {
    const Index q = Q.rows();
    Xi.resize(q, static_cast<Index>(cell_count()));
    rho_out.resize(q);
    RowVector row;
    for (Index r = 0; r < q; ++r) {
        double rr = 0.0;
        xi_rho(Q.row(r), row, rr);
        Xi.row(r) = row;
        rho_out[r] = rr;
    }
}

double CondMeanEstimator::xi(RowRef x, std::size_t cell) const {
    if (cell >= cell_count()) throw DataError("xi: cell index out of range");
    const auto& mem = members_[cell];
    if (mem.empty()) return 0.0;
    double acc = 0.0;
    for (Index j : mem) acc += eval_kernel(kernel_, x, anchors_x_.row(j));
    return acc / static_cast<double>(mem.size());
}

double CondMeanEstimator::rho(RowRef x) const {
    const Index m = anchors_x_.rows();
    double acc = 0.0;
    for (Index j = 0; j < m; ++j) acc += eval_kernel(kernel_, x, anchors_x_.row(j));
    return acc / static_cast<double>(m);
}

const CondMeanEstimator::Aggregates& CondMeanEstimator::aggregates() const {
    {
        std::lock_guard<std::mutex> lock(*agg_mutex_);
        if (agg_) return *agg_;
    }
    // Single pass over ordered anchor pairs (j, l). Every accumulator sees
    // its terms in the same j-major order, so in the single-cell case
    // o(0,0), tau(0) and M come out bit-identical.
    auto agg = std::make_shared<Aggregates>();
    const Index m = anchors_x_.rows();
    const auto cells = static_cast<Index>(cell_count());
    agg->o = Matrix::Zero(cells, cells);
    agg->tau = Vector::Zero(cells);
    double m_acc = 0.0;
    Vector tau_acc = Vector::Zero(cells);
    for (Index j = 0; j < m; ++j) {
        auto cj = static_cast<Index>(anchor_cell_[static_cast<std::size_t>(j)]);
        for (Index l = 0; l < m; ++l) {
            auto cl = static_cast<Index>(anchor_cell_[static_cast<std::size_t>(l)]);
            double v = eval_kernel(kernel_, anchors_x_.row(j), anchors_x_.row(l));
            agg->o(cj, cl) += v;
            tau_acc[cj] += v;
            m_acc += v;
        }
    }
    const auto md = static_cast<double>(m);
    for (Index u = 0; u < cells; ++u) {
        Index nu = cell_size(static_cast<std::size_t>(u));
        agg->tau[u] = nu > 0 ? tau_acc[u] / (md * nu) : 0.0;
        for (Index v = 0; v < cells; ++v) {
            Index nv = cell_size(static_cast<std::size_t>(v));
            agg->o(u, v) = (nu > 0 && nv > 0)
                               ? agg->o(u, v) / (static_cast<double>(nu) * nv)
                               : 0.0;
        }
    }
    agg->big_m = m_acc / (md * md);

    std::lock_guard<std::mutex> lock(*agg_mutex_);
    if (!agg_) agg_ = std::move(agg); // first writer wins; values are identical anyway
    return *agg_;
}

double CondMeanEstimator::o_cell(std::size_t u, std::size_t v) const {
    if (u >= cell_count() || v >= cell_count()) throw DataError("o_cell: cell index out of range");
    return aggregates().o(static_cast<Index>(u), static_cast<Index>(v));
}

double CondMeanEstimator::tau(std::size_t u) const {
    if (u >= cell_count()) throw DataError("tau: cell index out of range");
    return aggregates().tau[static_cast<Index>(u)];
}

double CondMeanEstimator::big_m() const {
    return aggregates().big_m;
}

} // namespace obliv
