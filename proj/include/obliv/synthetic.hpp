#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "obliv/types.hpp"

namespace obliv {

// A generated sample. Regeneration from the same (generator, params, seed)
// is bit-identical; generation is single-threaded per dataset.
struct Dataset {
    Matrix x; // n x d_x
    Matrix s; // n x d_s
    Vector y;                      // empty when the generator has no labels
    std::optional<Vector> y_star;  // ground-truth fair labels, when known
    std::uint64_t seed = 0;

    Index size() const { return x.rows(); }
};

enum class LabelMode { as_written, rescaled };

LabelMode label_mode_from_string(const std::string& name);
const char* to_string(LabelMode mode);

// Grades experiment. Per sample the stream is drawn in the order
// S, X0, B, U:
//   S  ~ Bernoulli(1/2) in {0, 1}
//   X0 ~ normal(trunc_mean, trunc_sd) truncated to [1, 4] (inverse CDF)
//   B  ~ Bernoulli(bump_p) in {0, 1}
//   U  ~ Uniform[0, 1)
//   X  = X0 - B if S = 0, X0 + B if S = 1
//   Y0 = chi{U >= X0}            (as_written; identically 0 on [1, 4])
//   Y0 = chi{U <= (X0 - 1) / 3}  (rescaled; default)
//   Y  = Y0 * chi{X + S >= threshold},  Y* = chi{X0 >= threshold}
//
// The as_written rule makes every label 0 because U < 1 <= X0; it is kept
// selectable so the degenerate behavior can be demonstrated, but rescaled
// (which maps X0 affinely onto [0, 1] so higher original grades pass more
// often) is the default.
struct ClassificationParams {
    double threshold = 2.0;
    double trunc_mean = 2.5;
    double trunc_sd = 1.0;
    double bump_p = 0.9;
    LabelMode mode = LabelMode::rescaled;
};

Dataset gen_classification(Index n, std::uint64_t seed, const ClassificationParams& params = {});

enum class RegressionVariant { exp1, exp2 };

RegressionVariant regression_variant_from_string(const std::string& name);

// Per sample, drawn in the order S, U, eps:
//   S, U ~ Uniform[-5, 5] independent, X = gamma*U + (1-gamma)*S,
//   eps ~ Normal(0, noise_variance),
//   Y = X^2 + eps (exp1) or X^2 + S^2 + eps (exp2).
Dataset gen_regression(Index n, double gamma, RegressionVariant variant, std::uint64_t seed,
                       double noise_variance = 0.1);

// Jointly Gaussian (X, S) with standard normal marginals and covariance c;
// no labels. c = 1 gives X = S exactly.
Dataset gen_gaussian_pair(Index n, double c, std::uint64_t seed);

// Rate-study generator with E(X | S) = c*S exactly:
//   S ~ Bernoulli(1/2) in {0,1} (binary_s) or Uniform[0, 1],
//   X = c*S + noise_sd * N(0, 1).
Dataset gen_conditional_linear(Index n, double c, bool binary_s, std::uint64_t seed,
                               double noise_sd = 1.0);

} // namespace obliv
