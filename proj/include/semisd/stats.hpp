#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "semisd/errors.hpp"
#include "semisd/transform.hpp"

namespace semisd {

namespace detail {

// Regularized lower incomplete gamma P(a, x): series for x < a + 1,
// continued fraction (modified Lentz) otherwise.
inline double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw PreconditionError("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16)
                return sum * std::exp(-x + a * std::log(x) - lg);
        }
        throw Error("gamma_p: series failed to converge");
    }
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return 1.0 - std::exp(-x + a * std::log(x) - lg) * h;
}

}  // namespace detail

/// Upper-tail probability of a chi-square variable with dof degrees of freedom.
inline double chi_square_sf(double x, int dof) {
    if (dof < 1) throw PreconditionError("chi_square_sf: dof must be >= 1");
    if (x <= 0.0) return 1.0;
    return 1.0 - detail::gamma_p(0.5 * static_cast<double>(dof), 0.5 * x);
}

/// Empirical characteristic function of a sample at a single argument.
inline Complex empirical_cf(std::span<const double> values, double s) {
    Complex acc(0.0, 0.0);
    for (double x : values) acc += std::polar(1.0, s * x);
    return acc / static_cast<double>(values.size());
}

/// Empirical PGF of an integer-valued sample at s in [0, 1].
inline double empirical_pgf(std::span<const double> values, double s) {
    double acc = 0.0;
    for (double x : values) acc += std::pow(s, x);
    return acc / static_cast<double>(values.size());
}

struct GofResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    std::size_t pooled_bins = 0;
};

/// Pearson chi-square goodness of fit of integer-valued observations
/// against a pmf table. Bins are pooled from the right so every pooled bin
/// has expected count >= min_expected; whatever pmf mass lies beyond the
/// table joins the last bin. dof = pooled bins - 1.
inline GofResult chi_square_gof(std::span<const double> values, std::span<const double> pmf,
                                double min_expected = 5.0) {
    if (values.empty()) throw PreconditionError("chi_square_gof: empty sample");
    if (pmf.empty()) throw PreconditionError("chi_square_gof: empty pmf");
    const double n = static_cast<double>(values.size());
    std::vector<double> observed(pmf.size() + 1, 0.0);
    for (double v : values) {
        const auto k = static_cast<std::size_t>(v);
        observed[std::min(k, pmf.size())] += 1.0;
    }
    std::vector<double> expected(pmf.size() + 1, 0.0);
    double mass = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        expected[k] = n * pmf[k];
        mass += pmf[k];
    }
    expected[pmf.size()] = n * std::max(0.0, 1.0 - mass);

    // pool cells so each bin's expectation clears the floor; trailing
    // remainder merges into the last formed bin
    std::vector<std::pair<double, double>> bins;  // (observed, expected)
    double ob = 0.0, ex = 0.0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        ob += observed[k];
        ex += expected[k];
        if (ex >= min_expected) {
            bins.emplace_back(ob, ex);
            ob = ex = 0.0;
        }
    }
    if (ex > 0.0 || ob > 0.0) {
        if (!bins.empty()) {
            bins.back().first += ob;
            bins.back().second += ex;
        } else {
            bins.emplace_back(ob, ex);
        }
    }
    if (bins.size() < 2) throw PreconditionError("chi_square_gof: fewer than 2 pooled bins");

    GofResult r;
    r.pooled_bins = bins.size();
    for (const auto& [o, e] : bins) r.statistic += (o - e) * (o - e) / e;
    r.dof = static_cast<int>(bins.size()) - 1;
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

/// Mean and (population) variance in one pass.
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

inline Moments sample_moments(std::span<const double> values) {
    if (values.empty()) throw PreconditionError("sample_moments: empty sample");
    Moments m;
    for (double v : values) m.mean += v;
    m.mean /= static_cast<double>(values.size());
    for (double v : values) m.variance += (v - m.mean) * (v - m.mean);
    m.variance /= static_cast<double>(values.size());
    return m;
}

/// Lag-1 autocorrelation of a series.
inline double lag1_autocorrelation(std::span<const double> values) {
    if (values.size() < 3) throw PreconditionError("lag1_autocorrelation: series too short");
    const Moments m = sample_moments(values);
    double cov = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i)
        cov += (values[i] - m.mean) * (values[i - 1] - m.mean);
    cov /= static_cast<double>(values.size() - 1);
    return cov / m.variance;
}

}  // namespace semisd
