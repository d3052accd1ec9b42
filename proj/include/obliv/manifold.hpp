#pragma once

#include <memory>
#include <vector>

#include "obliv/oblivious.hpp"
#include "obliv/types.hpp"

namespace obliv {

// Box-constrained minimizer settings for the manifold projection: a coarse
// uniform grid followed by per-coordinate golden-section refinement.
// Deterministic; no randomness anywhere.
struct OptimizerConfig {
    Vector lo, hi;        // feature-space box
    int resolution = 64;  // coarse grid points per axis (>= 2)
    int refine_sweeps = 4;
    int refine_iters = 60; // golden-section iterations per coordinate
    double tol = 1e-12;    // interval width cutoff

    void validate() const;
};

// Shift applied to Z before projecting. The transform centers features
// around the origin while the manifold phi[X] does not pass through it, so
// the empirical mean of the feature map is the default shift.
enum class HStar { zero, empirical_mean };

// A non-materialized oblivious feature tied to the (x, s) pair it came
// from. Enough to evaluate <Z, phi(probe)> and |Z|.
struct ZRep {
    ZRep(const ObliviousTransformer& transformer, RowRef x_in, RowRef s_in);

    double z_phi(RowRef probe) const; // <Z, phi(probe)>
    double norm_sq() const;           // |Z|^2

    const ObliviousTransformer* transformer;
    RowVector x, s;
    std::size_t cell;
};

struct Projection {
    Vector w;    // approximate argmin over the box
    double dist; // |Z + h* - phi(w)|
};

// Projects Z + h* onto the feature-map manifold by minimizing
// f(p) = k(p,p) - 2 <Z + h*, phi(p)> over the box.
Projection project(const ZRep& z, HStar h_star, const OptimizerConfig& cfg);

struct DistanceReport {
    double d_n = 0.0; // mean per-sample distance
    std::vector<double> per_sample;
    Matrix w; // projected points, one row per sample
};

DistanceReport empirical_distance(const std::vector<ZRep>& zs, HStar h_star,
                                  const OptimizerConfig& cfg);

// Two-sided deviation bound 2 exp(-2 n eps^2 / (25 rho^2)) for the
// empirical distance, rho = max_x |phi(x)|.
double hoeffding_bound(Index n, double eps, double rho);

// The eps at which the bound equals delta.
double hoeffding_radius(Index n, double delta, double rho);

struct PsiBound {
    double value = 0.0; // 2*rms + |f|*d_hat at the best lambda
    double lambda = 0.0;
    double rms = 0.0;
    double f_norm = 0.0;
};

// Ridge-restricted upper bound for the indicator-approximation trade-off:
// min over the lambda grid of 2*RMS(chi - f_lambda on W) + |f_lambda| * d_hat.
// The infimum over all of the RKHS is not computable; this is only an upper
// bound over ridge solutions and is reported as such.
PsiBound psi_upper_bound(const KernelSpec& kernel, const Matrix& W, const Vector& targets01,
                         const std::vector<double>& lambda_grid, double d_hat);

} // namespace obliv
