#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "semisd/errors.hpp"

namespace semisd {

using RngEngine = std::mt19937_64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Independent stream for one path/replicate. The stream depends on
/// (seed, index) only, never on scheduling order, so simulations are
/// reproducible under any degree of parallelism.
inline RngEngine path_stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (index + 1));
    const std::uint64_t s0 = detail::splitmix64(state);
    const std::uint64_t s1 = detail::splitmix64(state);
    const std::uint64_t s2 = detail::splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(s0), static_cast<std::uint32_t>(s0 >> 32),
                      static_cast<std::uint32_t>(s1), static_cast<std::uint32_t>(s1 >> 32),
                      static_cast<std::uint32_t>(s2), static_cast<std::uint32_t>(s2 >> 32)};
    return RngEngine(seq);
}

inline double uniform01(RngEngine& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double sample_gaussian(double mean, double stddev, RngEngine& rng) {
    return std::normal_distribution<double>(mean, stddev)(rng);
}

inline double sample_gamma(double shape, double scale, RngEngine& rng) {
    if (shape == 0.0) return 0.0;
    return std::gamma_distribution<double>(shape, scale)(rng);
}

inline double sample_exponential(double mean, RngEngine& rng) {
    return std::exponential_distribution<double>(1.0 / mean)(rng);
}

inline long long sample_poisson(double mean, RngEngine& rng) {
    if (mean == 0.0) return 0;
    return std::poisson_distribution<long long>(mean)(rng);
}

inline double sample_cauchy(double scale, RngEngine& rng) {
    return std::cauchy_distribution<double>(0.0, scale)(rng);
}

/// Positive stable variate with Laplace transform exp(-s^alpha),
/// 0 < alpha < 1 (Kanter's representation).
inline double sample_positive_stable(double alpha, RngEngine& rng) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw PreconditionError("sample_positive_stable: alpha must be in (0,1)");
    const double u = std::numbers::pi * uniform01(rng);
    const double e = sample_exponential(1.0, rng);
    const double ratio = alpha / (1.0 - alpha);
    const double A = std::sin((1.0 - alpha) * u) * std::pow(std::sin(alpha * u), ratio) /
                     std::pow(std::sin(u), 1.0 / (1.0 - alpha));
    return std::pow(A / e, 1.0 / ratio);
}

/// Symmetric stable variate with CF exp(-|s|^alpha), 0 < alpha <= 2
/// (Chambers-Mallows-Stuck; alpha = 2 is N(0, 2), alpha = 1 is Cauchy).
inline double sample_sym_stable(double alpha, RngEngine& rng) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw PreconditionError("sample_sym_stable: alpha must be in (0,2]");
    if (alpha == 2.0) return sample_gaussian(0.0, std::sqrt(2.0), rng);
    const double v = std::numbers::pi * (uniform01(rng) - 0.5);
    if (alpha == 1.0) return std::tan(v);
    const double e = sample_exponential(1.0, rng);
    return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos((1.0 - alpha) * v) / e, (1.0 - alpha) / alpha);
}

}  // namespace semisd
