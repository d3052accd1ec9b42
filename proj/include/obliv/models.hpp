#pragma once

#include <functional>
#include <string>
#include <vector>

#include "obliv/oblivious.hpp"
#include "obliv/types.hpp"

namespace obliv {

enum class ModelMode { krr, orr, m_orr, svm_plain, svm_oblivious };

const char* to_string(ModelMode mode);
ModelMode model_mode_from_string(const std::string& name);

inline bool is_svm(ModelMode m) {
    return m == ModelMode::svm_plain || m == ModelMode::svm_oblivious;
}
inline bool is_oblivious(ModelMode m) {
    return m == ModelMode::orr || m == ModelMode::m_orr || m == ModelMode::svm_oblivious;
}

// Dual coefficients of a fitted kernel model. reg is lambda for the ridge
// modes and C for the SVM modes. labels holds the +-1 training labels for
// SVM decision values; converged is cleared when the SVM hits its pass
// budget before reaching the KKT tolerance.
struct DualModel {
    ModelMode mode = ModelMode::krr;
    double reg = 1.0;
    Vector alphas;
    double intercept = 0.0;
    bool converged = true;
    Vector labels;
};

// Solves (G + lambda I) alpha = y with a symmetric factorization and checks
// the residual against 1e-8 * |y|. Throws NumericalError on breakdown.
Vector fit_ridge(const Matrix& G, const Vector& y, double lambda);

// Soft-margin SVM dual solved by SMO-style pairwise updates with
// maximal-violating-pair selection (deterministic). G is any PSD matrix, so
// the oblivious Gram drops in for the standard one. Labels must be +-1.
// Stops when the KKT violation falls below kkt_tol or the iteration budget
// max_passes * n runs out (then converged = false, no throw).
DualModel fit_svm(const Matrix& G, const Vector& y, double C, int max_passes = 400,
                  double kkt_tol = 1e-3);

// Ridge predictions: cross is q x n of inner products against the training
// representation.
Vector ridge_predict(const Vector& alphas, const Matrix& cross);

// SVM decision values f = sum_i alpha_i y_i cross(., i) + b.
Vector svm_decision(const DualModel& model, const Matrix& cross);

// Prediction for a single point.
double predict_orr(const Vector& alphas, const ObliviousTransformer& t, const ObliviousGram& g,
                   RowRef x, RowRef s);
double predict_morr(const Vector& alphas, const ObliviousTransformer& t, const Matrix& train_x,
                    RowRef x, RowRef s);
Vector predict_krr(const Vector& alphas, const KernelSpec& kernel, const Matrix& train_x,
                   const Matrix& Q);

// Grid 2^lo, 2^(lo+1), ..., 2^hi.
std::vector<double> pow2_grid(int lo, int hi);

// Value minimizing validation_loss over the grid; ties go to the smallest
// value. Throws DataError on an empty grid.
double select_reg(const std::vector<double>& grid,
                  const std::function<double(double)>& validation_loss);

} // namespace obliv
