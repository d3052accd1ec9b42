#include "obliv/dependence.hpp"

#include <cmath>
#include <map>

#include "obliv/errors.hpp"

namespace obliv {

double beta_tilde(const Vector& preds, const Vector& sens) {
    const Index n = preds.size();
    if (n == 0) throw DataError("beta_tilde: empty input");
    if (sens.size() != n) throw DataError("beta_tilde: length mismatch");

    std::map<double, Index> y_idx, s_idx;
    for (Index i = 0; i < n; ++i) {
        y_idx.emplace(preds[i], static_cast<Index>(y_idx.size()));
        s_idx.emplace(sens[i], static_cast<Index>(s_idx.size()));
    }
    Matrix joint = Matrix::Zero(static_cast<Index>(y_idx.size()), static_cast<Index>(s_idx.size()));
    for (Index i = 0; i < n; ++i) {
        joint(y_idx[preds[i]], s_idx[sens[i]]) += 1.0;
    }
    Vector cy = joint.rowwise().sum();
    Vector cs = joint.colwise().sum().transpose();

    const auto nd = static_cast<double>(n);
    double acc = 0.0;
    for (Index a = 0; a < joint.rows(); ++a) {
        for (Index b = 0; b < joint.cols(); ++b) {
            acc += std::abs(joint(a, b) / nd - (cy[a] / nd) * (cs[b] / nd));
        }
    }
    return 0.5 * acc;
}

CellMeanGap cell_mean_gap(const Vector& preds, const std::vector<std::size_t>& cells,
                          std::size_t cell_count) {
    if (preds.size() == 0) throw DataError("cell_mean_gap: empty input");
    if (cells.size() != static_cast<std::size_t>(preds.size())) {
        throw DataError("cell_mean_gap: length mismatch");
    }
    std::vector<double> sum(cell_count, 0.0);
    std::vector<Index> count(cell_count, 0);
    for (Index i = 0; i < preds.size(); ++i) {
        std::size_t u = cells[static_cast<std::size_t>(i)];
        if (u >= cell_count) throw DataError("cell_mean_gap: cell index out of range");
        sum[u] += preds[i];
        ++count[u];
    }
    CellMeanGap out;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (std::size_t u = 0; u < cell_count; ++u) {
        if (count[u] == 0) {
            ++out.empty_cells;
            continue;
        }
        ++out.populated_cells;
        double mean = sum[u] / static_cast<double>(count[u]);
        if (first) {
            lo = hi = mean;
            first = false;
        } else {
            lo = std::min(lo, mean);
            hi = std::max(hi, mean);
        }
    }
    out.gap = first ? 0.0 : hi - lo;
    return out;
}

Matrix covariance_matrix(const Matrix& A, const Matrix& B) {
    const Index n = A.rows();
    if (n == 0 || B.rows() != n) throw DataError("covariance_matrix: bad sample counts");

    auto centered = [n](const Matrix& M) {
        Matrix C = M;
        for (Index c = 0; c < M.cols(); ++c) {
            double mn = M.col(c).minCoeff();
            double mx = M.col(c).maxCoeff();
            // A constant column centers to exact zeros.
            double mean = mn == mx ? mn : M.col(c).mean();
            C.col(c).array() -= mean;
        }
        return C;
    };
    Matrix Ac = centered(A);
    Matrix Bc = centered(B);
    return Ac.transpose() * Bc / static_cast<double>(n);
}

std::vector<ProbeMap> default_probe_maps(const Partition& partition) {
    std::vector<ProbeMap> maps;
    for (std::size_t u = 0; u < partition.cell_count(); ++u) {
        maps.push_back({"cell_" + std::to_string(u), [&partition, u](RowRef s) {
                            return partition.assign_clamped(s) == u ? 1.0 : 0.0;
                        }});
    }
    maps.push_back({"s", [](RowRef s) { return s[0]; }});
    maps.push_back({"s^2", [](RowRef s) { return s[0] * s[0]; }});
    return maps;
}

Matrix h_independence_probe(const ObliviousTransformer& t, const Matrix& X, const Matrix& S,
                            const Matrix& probe_points, const std::vector<ProbeMap>& gs) {
    const Index n = X.rows();
    if (S.rows() != n || n == 0) throw DataError("h_independence_probe: bad eval set");

    // A(i, a) = <phi(x*_a), Z_i>; raw_cross_matrix already lays the eval
    // set out along rows and the probe points along columns.
    Matrix A = t.raw_cross_matrix(probe_points, X, S);

    Matrix B(n, static_cast<Index>(gs.size()));
    for (Index i = 0; i < n; ++i) {
        for (std::size_t b = 0; b < gs.size(); ++b) {
            B(i, static_cast<Index>(b)) = gs[b].fn(S.row(i));
        }
    }
    return covariance_matrix(A, B);
}

} // namespace obliv
