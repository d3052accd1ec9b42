#include "obliv/kernel.hpp"

#include <cmath>

#include "obliv/errors.hpp"

namespace obliv {

const char* to_string(KernelKind kind) {
    switch (kind) {
    case KernelKind::linear: return "linear";
    case KernelKind::polynomial: return "polynomial";
    case KernelKind::rbf: return "rbf";
    }
    return "?";
}

KernelKind kernel_kind_from_string(const std::string& name) {
    if (name == "linear") return KernelKind::linear;
    if (name == "polynomial") return KernelKind::polynomial;
    if (name == "rbf") return KernelKind::rbf;
    throw DataError("unknown kernel kind '" + name + "'");
}

KernelSpec KernelSpec::linear() {
    KernelSpec s;
    s.kind = KernelKind::linear;
    return s;
}

KernelSpec KernelSpec::polynomial(int degree, double offset) {
    KernelSpec s;
    s.kind = KernelKind::polynomial;
    s.degree = degree;
    s.offset = offset;
    s.validate();
    return s;
}

KernelSpec KernelSpec::rbf(double sigma) {
    KernelSpec s;
    s.kind = KernelKind::rbf;
    s.sigma = sigma;
    s.validate();
    return s;
}

void KernelSpec::validate() const {
    if (kind == KernelKind::polynomial) {
        if (degree < 1) throw DataError("polynomial kernel needs degree >= 1");
        if (!(offset >= 0.0)) throw DataError("polynomial kernel needs offset >= 0");
    }
    if (kind == KernelKind::rbf && !(sigma > 0.0)) {
        throw DataError("rbf kernel needs sigma > 0");
    }
}

double eval_kernel(const KernelSpec& spec, RowRef x, RowRef y) {
    if (x.size() != y.size()) {
        throw DataError("eval_kernel: dimension mismatch (" + std::to_string(x.size()) +
                        " vs " + std::to_string(y.size()) + ")");
    }
    switch (spec.kind) {
    case KernelKind::linear:
        return x.dot(y);
    case KernelKind::polynomial:
        return std::pow(x.dot(y) + spec.offset, spec.degree);
    case KernelKind::rbf: {
        double d2 = (x - y).squaredNorm();
        return std::exp(-d2 / (2.0 * spec.sigma * spec.sigma));
    }
    }
    return 0.0;
}

Matrix gram(const KernelSpec& spec, const Matrix& X, const Matrix& X2) {
    if (X.cols() != X2.cols()) {
        throw DataError("gram: column counts differ (" + std::to_string(X.cols()) +
                        " vs " + std::to_string(X2.cols()) + ")");
    }
    spec.validate();
    Matrix G(X.rows(), X2.rows());
    for (Index i = 0; i < X.rows(); ++i) {
        for (Index j = 0; j < X2.rows(); ++j) {
            G(i, j) = eval_kernel(spec, X.row(i), X2.row(j));
        }
    }
    return G;
}

Matrix gram(const KernelSpec& spec, const Matrix& X) {
    spec.validate();
    const Index n = X.rows();
    Matrix G(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i; j < n; ++j) {
            double v = eval_kernel(spec, X.row(i), X.row(j));
            G(i, j) = v;
            G(j, i) = v;
        }
    }
    return G;
}

} // namespace obliv
