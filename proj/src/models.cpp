#include "obliv/models.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>

#include "obliv/errors.hpp"

namespace obliv {

const char* to_string(ModelMode mode) {
    switch (mode) {
    case ModelMode::krr: return "krr";
    case ModelMode::orr: return "orr";
    case ModelMode::m_orr: return "m_orr";
    case ModelMode::svm_plain: return "svm_plain";
    case ModelMode::svm_oblivious: return "svm_oblivious";
    }
    return "?";
}

ModelMode model_mode_from_string(const std::string& name) {
    if (name == "krr") return ModelMode::krr;
    if (name == "orr") return ModelMode::orr;
    if (name == "m_orr") return ModelMode::m_orr;
    if (name == "svm_plain") return ModelMode::svm_plain;
    if (name == "svm_oblivious") return ModelMode::svm_oblivious;
    throw DataError("unknown model mode '" + name + "'");
}

Vector fit_ridge(const Matrix& G, const Vector& y, double lambda) {
    if (G.rows() != G.cols()) throw DataError("fit_ridge: G must be square");
    if (G.rows() != y.size()) throw DataError("fit_ridge: G and y sizes differ");
    if (!(lambda > 0.0)) throw DataError("fit_ridge: lambda must be > 0");

    Matrix A = G;
    A.diagonal().array() += lambda;
    Eigen::LDLT<Matrix> ldlt(A);
    if (ldlt.info() != Eigen::Success) {
        throw NumericalError("fit_ridge: factorization failed (lambda=" +
                             std::to_string(lambda) + ")");
    }
    Vector alpha = ldlt.solve(y);
    if (!alpha.allFinite()) {
        throw NumericalError("fit_ridge: non-finite solution (lambda=" + std::to_string(lambda) +
                             ", rcond~" + std::to_string(ldlt.rcond()) + ")");
    }
    double resid = (A * alpha - y).norm();
    double bound = 1e-8 * y.norm();
    if (y.norm() > 0.0 && resid > bound) {
        throw NumericalError("fit_ridge: residual " + std::to_string(resid) +
                             " exceeds 1e-8*|y| (rcond~" + std::to_string(ldlt.rcond()) + ")");
    }
    return alpha;
}

Vector ridge_predict(const Vector& alphas, const Matrix& cross) {
    if (cross.cols() != alphas.size()) throw DataError("ridge_predict: size mismatch");
    return cross * alphas;
}

Vector svm_decision(const DualModel& model, const Matrix& cross) {
    if (cross.cols() != model.alphas.size()) throw DataError("svm_decision: size mismatch");
    Vector coef = model.alphas.cwiseProduct(model.labels);
    return (cross * coef).array() + model.intercept;
}

double predict_orr(const Vector& alphas, const ObliviousTransformer& t, const ObliviousGram& g,
                   RowRef x, RowRef s) {
    return t.cross(g, x, s).dot(alphas);
}

double predict_morr(const Vector& alphas, const ObliviousTransformer& t, const Matrix& train_x,
                    RowRef x, RowRef s) {
    double acc = 0.0;
    for (Index i = 0; i < train_x.rows(); ++i) {
        acc += alphas[i] * t.raw_cross(train_x.row(i), x, s);
    }
    return acc;
}

Vector predict_krr(const Vector& alphas, const KernelSpec& kernel, const Matrix& train_x,
                   const Matrix& Q) {
    return gram(kernel, Q, train_x) * alphas;
}

std::vector<double> pow2_grid(int lo, int hi) {
    std::vector<double> g;
    for (int e = lo; e <= hi; ++e) g.push_back(std::ldexp(1.0, e));
    return g;
}

double select_reg(const std::vector<double>& grid,
                  const std::function<double(double)>& validation_loss) {
    if (grid.empty()) throw DataError("select_reg: empty grid");
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    double best = sorted.front();
    double best_loss = std::numeric_limits<double>::infinity();
    for (double v : sorted) {
        double loss = validation_loss(v);
        if (loss < best_loss) {
            best_loss = loss;
            best = v;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// SMO
// ---------------------------------------------------------------------------

DualModel fit_svm(const Matrix& G, const Vector& y, double C, int max_passes, double kkt_tol) {
    const Index n = G.rows();
    if (G.cols() != n) throw DataError("fit_svm: G must be square");
    if (y.size() != n) throw DataError("fit_svm: G and y sizes differ");
    if (!(C > 0.0)) throw DataError("fit_svm: C must be > 0");
    for (Index i = 0; i < n; ++i) {
        if (y[i] != 1.0 && y[i] != -1.0) throw DataError("fit_svm: labels must be +-1");
    }

    // Dual: min (1/2) a'Qa - e'a,  Q_ij = y_i y_j G_ij,  0 <= a <= C, y'a = 0.
    Vector alpha = Vector::Zero(n);
    Vector grad = Vector::Constant(n, -1.0);

    auto in_up = [&](Index i) {
        return (y[i] > 0 && alpha[i] < C) || (y[i] < 0 && alpha[i] > 0);
    };
    auto in_low = [&](Index i) {
        return (y[i] > 0 && alpha[i] > 0) || (y[i] < 0 && alpha[i] < C);
    };

    const long budget = static_cast<long>(max_passes) * std::max<long>(n, 64);
    bool converged = false;
    double m_up = 0.0, m_low = 0.0;
    for (long iter = 0; iter < budget; ++iter) {
        // Maximal violating pair.
        Index i = -1, j = -1;
        m_up = -std::numeric_limits<double>::infinity();
        m_low = std::numeric_limits<double>::infinity();
        for (Index t = 0; t < n; ++t) {
            double v = -y[t] * grad[t];
            if (in_up(t) && v > m_up) {
                m_up = v;
                i = t;
            }
            if (in_low(t) && v < m_low) {
                m_low = v;
                j = t;
            }
        }
        if (i < 0 || j < 0 || m_up - m_low <= kkt_tol) {
            converged = true;
            break;
        }

        // Curvature along the feasible direction e_i*y_i - e_j*y_j.
        double eta = G(i, i) + G(j, j) - 2.0 * G(i, j);
        if (eta <= 0.0) eta = 1e-12;
        double delta = (m_up - m_low) / eta;

        // Move alpha_i up and alpha_j down along the equality constraint,
        // clipped to the box.
        double step = delta;
        double room_i = y[i] > 0 ? C - alpha[i] : alpha[i];
        double room_j = y[j] > 0 ? alpha[j] : C - alpha[j];
        step = std::min(step, room_i);
        step = std::min(step, room_j);
        if (step <= 0.0) break; // numerically stuck at the box

        double dai = y[i] * step;
        double daj = -y[j] * step;
        alpha[i] += dai;
        alpha[j] += daj;
        alpha[i] = std::min(C, std::max(0.0, alpha[i]));
        alpha[j] = std::min(C, std::max(0.0, alpha[j]));
        for (Index t = 0; t < n; ++t) {
            grad[t] += y[t] * (y[i] * G(t, i) * dai + y[j] * G(t, j) * daj);
        }
    }

    DualModel model;
    model.mode = ModelMode::svm_plain;
    model.reg = C;
    model.alphas = alpha;
    model.labels = y;
    model.converged = converged;

    // Intercept: average -y_i grad_i over free vectors, otherwise the
    // midpoint of the KKT interval.
    double b_acc = 0.0;
    Index free_count = 0;
    for (Index t = 0; t < n; ++t) {
        if (alpha[t] > 0.0 && alpha[t] < C) {
            b_acc += -y[t] * grad[t];
            ++free_count;
        }
    }
    if (free_count > 0) {
        model.intercept = b_acc / free_count;
    } else {
        double up = -std::numeric_limits<double>::infinity();
        double low = std::numeric_limits<double>::infinity();
        for (Index t = 0; t < n; ++t) {
            double v = -y[t] * grad[t];
            if (in_up(t)) up = std::max(up, v);
            if (in_low(t)) low = std::min(low, v);
        }
        if (std::isfinite(up) && std::isfinite(low)) {
            model.intercept = 0.5 * (up + low);
        }
    }
    return model;
}

} // namespace obliv
