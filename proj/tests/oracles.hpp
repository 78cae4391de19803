#pragma once

// Independent oracles for the test suite. Everything here is computed by a
// route that shares no code with the library: power series, closed-form
// pmfs, and textbook identities. Tests freeze expected values against these.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracles {

/// Standard normal CDF via the power series
/// Phi(x) = 1/2 + pdf(x) * sum_{k>=0} x^{2k+1} / (1*3*5*...*(2k+1)).
inline double normal_cdf(double x) {
    if (x < -9.0) return 0.0;
    if (x > 9.0) return 1.0;
    double term = x;
    double sum = x;
    double odd = 1.0;
    for (int k = 1; k < 400; ++k) {
        odd += 2.0;
        term *= x * x / odd;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    return 0.5 + pdf * sum;
}

/// Standard Cauchy CDF.
inline double cauchy_cdf(double x) { return 0.5 + std::atan(x) / std::numbers::pi; }

inline double poisson_pmf(double lambda, int k) {
    double logp = -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
    return std::exp(logp);
}

/// pmf of the geometric law with P(k) = p (1-p)^k, k >= 0.
inline double geometric_pmf(double p, int k) { return p * std::pow(1.0 - p, k); }

/// Chi-square survival function for even dof, closed form:
/// SF(x; 2m) = exp(-x/2) * sum_{j<m} (x/2)^j / j!.
inline double chi_square_sf_even(double x, int dof) {
    if (dof % 2 != 0) throw std::invalid_argument("even dof only");
    const int m = dof / 2;
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < m; ++j) {
        term *= (0.5 * x) / j;
        sum += term;
    }
    return std::exp(-0.5 * x) * sum;
}

/// Chi-square survival for dof 1: 2 * (1 - Phi(sqrt(x))).
inline double chi_square_sf_one(double x) { return 2.0 * (1.0 - normal_cdf(std::sqrt(x))); }

/// k-th forward finite difference of f on a uniform grid, computed directly
/// from the binomial formula.
template <typename F>
double forward_difference(F f, double s, double h, int k) {
    double acc = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom * f(s + j * h);
        binom *= static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
    return acc;
}

}  // namespace oracles
