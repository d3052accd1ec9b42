#include "obliv/synthetic.hpp"

#include <cmath>

#include "obliv/errors.hpp"
#include "obliv/rng.hpp"

namespace obliv {

LabelMode label_mode_from_string(const std::string& name) {
    if (name == "as_written") return LabelMode::as_written;
    if (name == "rescaled") return LabelMode::rescaled;
    throw DataError("unknown label mode '" + name + "'");
}

const char* to_string(LabelMode mode) {
    return mode == LabelMode::as_written ? "as_written" : "rescaled";
}

RegressionVariant regression_variant_from_string(const std::string& name) {
    if (name == "exp1") return RegressionVariant::exp1;
    if (name == "exp2") return RegressionVariant::exp2;
    throw DataError("unknown regression variant '" + name + "'");
}

Dataset gen_classification(Index n, std::uint64_t seed, const ClassificationParams& params) {
    if (n < 1) throw DataError("gen_classification: n must be >= 1");
    if (!(params.trunc_sd > 0.0)) throw DataError("gen_classification: trunc_sd must be > 0");

    Dataset ds;
    ds.seed = seed;
    ds.x.resize(n, 1);
    ds.s.resize(n, 1);
    ds.y.resize(n);
    ds.y_star = Vector(n);

    Rng rng(seed);
    for (Index i = 0; i < n; ++i) {
        double s = rng.bernoulli(0.5) ? 1.0 : 0.0;
        double x0 = rng.truncated_normal(params.trunc_mean, params.trunc_sd, 1.0, 4.0);
        double b = rng.bernoulli(params.bump_p) ? 1.0 : 0.0;
        double u = rng.uniform01();

        double x = s == 0.0 ? x0 - b : x0 + b;
        double y0;
        if (params.mode == LabelMode::as_written) {
            y0 = u >= x0 ? 1.0 : 0.0;
        } else {
            y0 = u <= (x0 - 1.0) / 3.0 ? 1.0 : 0.0;
        }
        ds.x(i, 0) = x;
        ds.s(i, 0) = s;
        ds.y[i] = x + s >= params.threshold ? y0 : 0.0;
        (*ds.y_star)[i] = x0 >= params.threshold ? 1.0 : 0.0;
    }
    return ds;
}

Dataset gen_regression(Index n, double gamma, RegressionVariant variant, std::uint64_t seed,
                       double noise_variance) {
    if (n < 1) throw DataError("gen_regression: n must be >= 1");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw DataError("gen_regression: gamma must be in [0,1]");
    if (!(noise_variance >= 0.0)) throw DataError("gen_regression: negative noise variance");

    Dataset ds;
    ds.seed = seed;
    ds.x.resize(n, 1);
    ds.s.resize(n, 1);
    ds.y.resize(n);

    const double noise_sd = std::sqrt(noise_variance);
    Rng rng(seed);
    for (Index i = 0; i < n; ++i) {
        double s = rng.uniform(-5.0, 5.0);
        double u = rng.uniform(-5.0, 5.0);
        double eps = noise_sd * rng.normal();
        double x = gamma * u + (1.0 - gamma) * s;
        ds.x(i, 0) = x;
        ds.s(i, 0) = s;
        ds.y[i] = variant == RegressionVariant::exp1 ? x * x + eps : x * x + s * s + eps;
    }
    return ds;
}

Dataset gen_gaussian_pair(Index n, double c, std::uint64_t seed) {
    if (n < 1) throw DataError("gen_gaussian_pair: n must be >= 1");
    if (!(c >= -1.0 && c <= 1.0)) throw DataError("gen_gaussian_pair: c must be in [-1,1]");

    Dataset ds;
    ds.seed = seed;
    ds.x.resize(n, 1);
    ds.s.resize(n, 1);

    const double resid = std::sqrt(1.0 - c * c);
    Rng rng(seed);
    for (Index i = 0; i < n; ++i) {
        double s = rng.normal();
        double w = rng.normal();
        ds.s(i, 0) = s;
        ds.x(i, 0) = c * s + resid * w;
    }
    return ds;
}

Dataset gen_conditional_linear(Index n, double c, bool binary_s, std::uint64_t seed,
                               double noise_sd) {
    if (n < 1) throw DataError("gen_conditional_linear: n must be >= 1");

    Dataset ds;
    ds.seed = seed;
    ds.x.resize(n, 1);
    ds.s.resize(n, 1);

    Rng rng(seed);
    for (Index i = 0; i < n; ++i) {
        double s = binary_s ? (rng.bernoulli(0.5) ? 1.0 : 0.0) : rng.uniform01();
        double w = rng.normal();
        ds.s(i, 0) = s;
        ds.x(i, 0) = c * s + noise_sd * w;
    }
    return ds;
}

} // namespace obliv
