#include "obliv/oblivious.hpp"

#include <string>

#include "obliv/errors.hpp"

namespace obliv {

ObliviousTransformer::ObliviousTransformer(std::shared_ptr<const CondMeanEstimator> estimator)
    : est_(std::move(estimator)),
      clamp_tally_(std::make_shared<std::atomic<std::int64_t>>(0)) {
    if (!est_) throw DataError("ObliviousTransformer: null estimator");
}

std::size_t ObliviousTransformer::clamped_cell(RowRef s) const {
    bool clamped = false;
    std::size_t cell = est_->partition().assign_clamped(s, &clamped);
    if (clamped) clamp_tally_->fetch_add(1);
    return cell;
}

double ObliviousTransformer::z_dot(RowRef x, RowRef s, RowRef x2, RowRef s2) const {
    const auto& part = est_->partition();
    std::size_t a = part.assign(s);
    std::size_t b = part.assign(s2);
    double k = eval_kernel(est_->kernel(), x, x2);
    return k - est_->xi(x, b) - est_->xi(x2, a) + est_->o_cell(a, b) + est_->rho(x) +
           est_->rho(x2) + est_->big_m() - est_->tau(a) - est_->tau(b);
}

double ObliviousTransformer::z_norm_sq(RowRef x, RowRef s) const {
    std::size_t a = clamped_cell(s);
    double k = eval_kernel(est_->kernel(), x, x);
    return k - 2.0 * est_->xi(x, a) + est_->o_cell(a, a) + 2.0 * est_->rho(x) + est_->big_m() -
           2.0 * est_->tau(a);
}

ObliviousGram ObliviousTransformer::gram_matrix(const Matrix& X, const Matrix& S) const {
    const Index n = X.rows();
    if (n < 1) throw DataError("oblivious gram: needs at least one row");
    if (S.rows() != n) throw DataError("oblivious gram: X and S row counts differ");

    ObliviousGram g;
    g.train_x = X;
    g.train_s = S;
    g.cell_of.resize(static_cast<std::size_t>(n));
    const auto& part = est_->partition();
    for (Index i = 0; i < n; ++i) {
        g.cell_of[static_cast<std::size_t>(i)] = part.assign(S.row(i));
    }
    est_->xi_rho_matrix(X, g.xi_train, g.rho_train);

    Matrix K = gram(est_->kernel(), X);
    const double M = est_->big_m();
    g.o.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        auto ci = static_cast<Index>(g.cell_of[static_cast<std::size_t>(i)]);
        for (Index j = i; j < n; ++j) {
            auto cj = static_cast<Index>(g.cell_of[static_cast<std::size_t>(j)]);
            double v = K(i, j) - g.xi_train(i, cj) - g.xi_train(j, ci) +
                       est_->o_cell(static_cast<std::size_t>(ci), static_cast<std::size_t>(cj)) +
                       g.rho_train[i] + g.rho_train[j] + M -
                       est_->tau(static_cast<std::size_t>(ci)) -
                       est_->tau(static_cast<std::size_t>(cj));
            g.o(i, j) = v;
            g.o(j, i) = v;
        }
    }
    for (Index i = 0; i < n; ++i) {
        if (!(g.o(i, i) >= -1e-10)) {
            throw NumericalError("oblivious gram: negative squared norm on the diagonal (" +
                                 std::to_string(g.o(i, i)) + " at row " + std::to_string(i) + ")");
        }
    }
    return g;
}

Matrix ObliviousTransformer::cross_matrix(const ObliviousGram& g, const Matrix& Q,
                                          const Matrix& T) const {
    const Index q = Q.rows();
    const Index n = g.size();
    if (T.rows() != q) throw DataError("cross_matrix: Q and T row counts differ");

    std::vector<std::size_t> cell_q(static_cast<std::size_t>(q));
    for (Index r = 0; r < q; ++r) cell_q[static_cast<std::size_t>(r)] = clamped_cell(T.row(r));

    Matrix Xi_q;
    Vector rho_q;
    est_->xi_rho_matrix(Q, Xi_q, rho_q);
    Matrix Kqt = gram(est_->kernel(), Q, g.train_x);

    const double M = est_->big_m();
    Matrix C(q, n);
    for (Index r = 0; r < q; ++r) {
        auto cr = cell_q[static_cast<std::size_t>(r)];
        double tau_r = est_->tau(cr);
        for (Index j = 0; j < n; ++j) {
            auto cj = g.cell_of[static_cast<std::size_t>(j)];
            C(r, j) = Kqt(r, j) - Xi_q(r, static_cast<Index>(cj)) -
                      g.xi_train(j, static_cast<Index>(cr)) + est_->o_cell(cr, cj) + rho_q[r] +
                      g.rho_train[j] + M - tau_r - est_->tau(cj);
        }
    }
    return C;
}

Vector ObliviousTransformer::cross(const ObliviousGram& g, RowRef x, RowRef s) const {
    Matrix Q(1, x.size());
    Q.row(0) = x;
    Matrix T(1, s.size());
    T.row(0) = s;
    return cross_matrix(g, Q, T).row(0).transpose();
}

double ObliviousTransformer::raw_cross(RowRef x_train, RowRef x, RowRef s) const {
    std::size_t cell = clamped_cell(s);
    return eval_kernel(est_->kernel(), x_train, x) - est_->xi(x_train, cell) +
           est_->rho(x_train);
}

Matrix ObliviousTransformer::raw_cross_matrix(const Matrix& train_x, const Matrix& Q,
                                              const Matrix& T) const {
    const Index q = Q.rows();
    const Index n = train_x.rows();
    if (T.rows() != q) throw DataError("raw_cross_matrix: Q and T row counts differ");

    Matrix Xi_t;
    Vector rho_t;
    est_->xi_rho_matrix(train_x, Xi_t, rho_t);
    Matrix Kqt = gram(est_->kernel(), Q, train_x);

    Matrix C(q, n);
    for (Index r = 0; r < q; ++r) {
        auto cr = static_cast<Index>(clamped_cell(T.row(r)));
        for (Index i = 0; i < n; ++i) {
            C(r, i) = Kqt(r, i) - Xi_t(i, cr) + rho_t[i];
        }
    }
    return C;
}

} // namespace obliv
