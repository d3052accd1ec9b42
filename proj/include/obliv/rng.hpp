#pragma once

#include <cstdint>
#include <random>

namespace obliv {

// Seeded draw stream used by every generator. The engine is std::mt19937_64
// (fully specified by the standard, so raw output is identical on every
// platform) and all real-valued draws are fixed mappings of single 64-bit
// words: uniforms take the top 53 bits, normals go through the inverse CDF.
// One stream per dataset keeps generation independent of thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // 53-bit uniform on [0, 1).
    double uniform01() {
        return static_cast<double>(raw() >> 11) * 0x1.0p-53;
    }

    // Uniform on the open interval (0, 1); safe to feed inverse CDFs.
    double uniform01_open() {
        return (static_cast<double>(raw() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via the inverse CDF (one draw per variate).
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Truncated normal on [lo, hi] via inverse-CDF sampling of the base
    // N(mean, sd^2) restricted to the interval.
    double truncated_normal(double mean, double sd, double lo, double hi);

private:
    std::mt19937_64 gen_;
};

double normal_cdf(double x);

// Inverse standard normal CDF: Acklam's rational approximation polished
// with one Halley step, accurate to ~1e-15 over (0, 1).
double inverse_normal_cdf(double p);

// Large odd stride used to derive the seed of repetition r from a base
// seed: seed_r = base + r * seed_stride (mod 2^64).
inline constexpr std::uint64_t seed_stride = 0x9E3779B97F4A7C15ULL;

} // namespace obliv
