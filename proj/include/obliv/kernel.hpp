#pragma once

#include <string>

#include "obliv/types.hpp"

namespace obliv {

enum class KernelKind { linear, polynomial, rbf };

const char* to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

// Kernel family plus hyperparameters; the feature map phi(x) = k(x, .) is
// implicit and everything downstream reduces to evaluations of k.
struct KernelSpec {
    KernelKind kind = KernelKind::rbf;
    int degree = 1;      // polynomial only, >= 1
    double offset = 0.0; // polynomial only, >= 0
    double sigma = 1.0;  // rbf only, > 0

    static KernelSpec linear();
    static KernelSpec polynomial(int degree, double offset = 0.0);
    static KernelSpec rbf(double sigma);

    void validate() const; // throws DataError on invalid hyperparameters
};

// k(x, y). Throws DataError on dimension mismatch.
double eval_kernel(const KernelSpec& spec, RowRef x, RowRef y);

// Cross-Gram: entry (i, j) = k(X.row(i), X2.row(j)).
Matrix gram(const KernelSpec& spec, const Matrix& X, const Matrix& X2);

// Self-Gram. The upper triangle is computed and mirrored, so the result is
// symmetric to exact bit equality.
Matrix gram(const KernelSpec& spec, const Matrix& X);

} // namespace obliv
