#include "obliv/manifold.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "obliv/errors.hpp"
#include "obliv/models.hpp"

namespace obliv {

void OptimizerConfig::validate() const {
    if (lo.size() != hi.size() || lo.size() == 0) {
        throw DataError("optimizer box: lo/hi must be nonempty and of equal dimension");
    }
    for (Index k = 0; k < lo.size(); ++k) {
        if (!(lo[k] < hi[k])) throw DataError("optimizer box: lo must be < hi on every axis");
    }
    if (resolution < 2) throw DataError("optimizer: resolution must be >= 2");
    if (!(tol > 0.0)) throw DataError("optimizer: tol must be > 0");
}

ZRep::ZRep(const ObliviousTransformer& t, RowRef x_in, RowRef s_in)
    : transformer(&t), x(x_in), s(s_in) {
    bool clamped = false;
    cell = t.estimator().partition().assign_clamped(s, &clamped);
}

double ZRep::z_phi(RowRef probe) const {
    const auto& est = transformer->estimator();
    return eval_kernel(est.kernel(), x, probe) - est.xi(probe, cell) + est.rho(probe);
}

double ZRep::norm_sq() const {
    const auto& est = transformer->estimator();
    return eval_kernel(est.kernel(), x, x) - 2.0 * est.xi(x, cell) + est.o_cell(cell, cell) +
           2.0 * est.rho(x) + est.big_m() - 2.0 * est.tau(cell);
}

namespace {

// Golden-section minimization of fn over [a, b].
double golden_section(const std::function<double(double)>& fn, double a, double b, int iters,
                      double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    for (int it = 0; it < iters && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

Projection project(const ZRep& z, HStar h_star, const OptimizerConfig& cfg) {
    cfg.validate();
    const auto& est = z.transformer->estimator();
    const Index d = cfg.lo.size();

    // g(p) = <Z + h*, phi(p)>, shifted_norm_sq = |Z + h*|^2.
    const bool with_mean = h_star == HStar::empirical_mean;
    auto g = [&](RowRef p) { return z.z_phi(p) + (with_mean ? est.rho(p) : 0.0); };
    double shifted_norm_sq = z.norm_sq();
    if (with_mean) {
        double z_dot_h = est.rho(z.x) - est.tau(z.cell) + est.big_m();
        shifted_norm_sq += 2.0 * z_dot_h + est.big_m();
    }

    auto f = [&](const RowVector& p) {
        return eval_kernel(est.kernel(), p, p) - 2.0 * g(p);
    };

    // Coarse grid: resolution^d points, row-major sweep.
    RowVector best(d);
    double best_f = std::numeric_limits<double>::infinity();
    RowVector p(d);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    Vector step(d);
    for (Index k = 0; k < d; ++k) step[k] = (cfg.hi[k] - cfg.lo[k]) / (cfg.resolution - 1);
    bool done = false;
    while (!done) {
        for (Index k = 0; k < d; ++k) p[k] = cfg.lo[k] + idx[static_cast<std::size_t>(k)] * step[k];
        double v = f(p);
        if (v < best_f) {
            best_f = v;
            best = p;
        }
        Index k = 0;
        for (; k < d; ++k) {
            auto& ik = idx[static_cast<std::size_t>(k)];
            if (++ik < cfg.resolution) break;
            ik = 0;
        }
        done = k == d;
    }

    // Per-coordinate golden-section refinement with shrinking brackets.
    RowVector w = best;
    for (int sweep = 0; sweep < cfg.refine_sweeps; ++sweep) {
        for (Index k = 0; k < d; ++k) {
            double half = step[k] / std::ldexp(1.0, sweep);
            double a = std::max(cfg.lo[k], w[k] - half);
            double b = std::min(cfg.hi[k], w[k] + half);
            if (!(b > a)) continue;
            auto line = [&](double t) {
                RowVector q = w;
                q[k] = t;
                return f(q);
            };
            double t = golden_section(line, a, b, cfg.refine_iters, cfg.tol);
            if (line(t) <= f(w)) w[k] = t;
        }
    }

    Projection out;
    out.w = w.transpose();
    out.dist = std::sqrt(std::max(0.0, shifted_norm_sq + f(w)));
    return out;
}

DistanceReport empirical_distance(const std::vector<ZRep>& zs, HStar h_star,
                                  const OptimizerConfig& cfg) {
    if (zs.empty()) throw DataError("empirical_distance: no samples");
    DistanceReport rep;
    rep.per_sample.reserve(zs.size());
    rep.w.resize(static_cast<Index>(zs.size()), cfg.lo.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        Projection p = project(zs[i], h_star, cfg);
        rep.per_sample.push_back(p.dist);
        rep.w.row(static_cast<Index>(i)) = p.w.transpose();
        acc += p.dist;
    }
    rep.d_n = acc / static_cast<double>(zs.size());
    return rep;
}

double hoeffding_bound(Index n, double eps, double rho) {
    if (n < 1 || !(rho > 0.0)) throw DataError("hoeffding_bound: need n >= 1 and rho > 0");
    if (eps < 0.0) throw DataError("hoeffding_bound: eps must be >= 0");
    return 2.0 * std::exp(-2.0 * static_cast<double>(n) * eps * eps / (25.0 * rho * rho));
}

double hoeffding_radius(Index n, double delta, double rho) {
    if (!(delta > 0.0 && delta < 2.0)) throw DataError("hoeffding_radius: delta must be in (0,2)");
    return 5.0 * rho * std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

PsiBound psi_upper_bound(const KernelSpec& kernel, const Matrix& W, const Vector& targets01,
                         const std::vector<double>& lambda_grid, double d_hat) {
    if (lambda_grid.empty()) throw DataError("psi_upper_bound: empty lambda grid");
    if (W.rows() != targets01.size()) throw DataError("psi_upper_bound: W/targets size mismatch");
    for (Index i = 0; i < targets01.size(); ++i) {
        if (targets01[i] != 0.0 && targets01[i] != 1.0) {
            throw DataError("psi_upper_bound: targets must be 0/1");
        }
    }

    Matrix K = gram(kernel, W);
    std::vector<double> sorted = lambda_grid;
    std::sort(sorted.begin(), sorted.end());

    PsiBound best;
    best.value = std::numeric_limits<double>::infinity();
    for (double lambda : sorted) {
        Vector alpha = fit_ridge(K, targets01, lambda);
        Vector fitted = K * alpha;
        double rms = std::sqrt((targets01 - fitted).squaredNorm() /
                               static_cast<double>(targets01.size()));
        double f_norm = std::sqrt(std::max(0.0, alpha.dot(K * alpha)));
        double value = 2.0 * rms + f_norm * d_hat;
        if (value < best.value) {
            best.value = value;
            best.lambda = lambda;
            best.rms = rms;
            best.f_norm = f_norm;
        }
    }
    return best;
}

} // namespace obliv
