#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "semisd/errors.hpp"
#include "semisd/report.hpp"
#include "semisd/transform.hpp"

namespace semisd {

/// Numerical-inversion knobs. Every tolerance used by the transform-level
/// checks lives here; nothing is hard-coded at call sites.
struct InversionConfig {
    double grid_halfwidth = 200.0;    ///< truncation limit U for oscillatory integrals
    std::size_t grid_points = 20001;  ///< quadrature resolution on (0, U]
    std::size_t dft_size = 4096;      ///< power of two; coefficient-extraction resolution
    double tolerance = 1e-8;

    void validate() const {
        if (!(grid_halfwidth > 0.0)) throw PreconditionError("InversionConfig: grid_halfwidth must be > 0");
        if (grid_points < 16) throw PreconditionError("InversionConfig: grid_points must be >= 16");
        if (dft_size < 2 || (dft_size & (dft_size - 1)) != 0)
            throw PreconditionError("InversionConfig: dft_size must be a power of two >= 2");
        if (!(tolerance > 0.0)) throw PreconditionError("InversionConfig: tolerance must be > 0");
    }
};

namespace detail {

/// In-place iterative radix-2 FFT, size a power of two. sign=-1 forward.
inline void fft_pow2(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const Complex wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace detail

/// CDF value F(x) recovered from a CF by the Gil-Pelaez formula
///
///   F(x) = 1/2 - (1/pi) * integral_0^U Im[e^{-isx} f(s)] / s ds,
///
/// composite midpoint rule on (0, U]. The midpoint rule never evaluates at
/// the integrable s=0 singularity. The tail magnitude |f(+-U)| must be below
/// cfg.tolerance or the truncation cannot be trusted.
inline double invert_cf_to_cdf(const Transform& f, double x, const InversionConfig& cfg = {}) {
    cfg.validate();
    if (f.kind() != TransformKind::CF)
        throw PreconditionError("invert_cf_to_cdf: input must be a CF, got " +
                                std::string(to_string(f.kind())));
    const double U = cfg.grid_halfwidth;
    if (std::abs(f(U)) >= cfg.tolerance || std::abs(f(-U)) >= cfg.tolerance)
        throw TruncationUnsafeError(
            "truncation-unsafe: |f| at +-" + std::to_string(U) + " is " +
            std::to_string(std::abs(f(U))) + ", not below tolerance " +
            std::to_string(cfg.tolerance) + "; raise grid_halfwidth");

    const std::size_t n = cfg.grid_points;
    const double h = U / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double s = (static_cast<double>(j) + 0.5) * h;
        const Complex v = f(s) * std::polar(1.0, -s * x);
        acc += v.imag() / s;
    }
    const double F = 0.5 - acc * h / std::numbers::pi;
    return std::clamp(F, 0.0, 1.0);
}

/// Full power-series sample of a PGF-like transform: all dft_size
/// coefficients from samples on the unit circle, plus diagnostics.
///
/// Sampling uses half-bin offset angles 2*pi*(j+1/2)/N so that s = +-1 are
/// never sample points (a candidate that is not a PGF may be singular
/// there). The offset turns aliasing into a sign-alternating fold:
/// coeff[k] = sum_p (-1)^p p_{k+pN}, still bounded by the tail mass beyond N.
struct PgfSpectrum {
    std::vector<double> coeffs;     ///< all dft_size folded coefficients
    double max_imag_residue = 0.0;  ///< worst |Im| before discarding
    double tail_mass = 0.0;         ///< sum of |coeff| over the upper half; bounds aliasing into [0, N/2)
};

inline PgfSpectrum sample_pgf_spectrum(const Transform& P, const InversionConfig& cfg = {}) {
    cfg.validate();
    const std::size_t N = cfg.dft_size;
    std::vector<Complex> v(N);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double theta = (static_cast<double>(j) + 0.5) * step;
        v[j] = P(std::polar(1.0, theta));
    }
    detail::fft_pow2(v, -1);
    PgfSpectrum out;
    out.coeffs.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        // undo the half-bin phase offset and normalize
        const double phase = -(static_cast<double>(k)) * step * 0.5;
        const Complex c = v[k] * std::polar(1.0 / static_cast<double>(N), phase);
        out.coeffs[k] = c.real();
        out.max_imag_residue = std::max(out.max_imag_residue, std::abs(c.imag()));
    }
    for (std::size_t k = N / 2; k < N; ++k) out.tail_mass += std::abs(out.coeffs[k]);
    return out;
}

/// Power-series coefficients p_0..p_n_max of a PGF, from an inverse DFT of
/// unit-circle samples. Coefficients must come out real within tolerance.
inline std::vector<double> extract_pgf_coeffs(const Transform& P, std::size_t n_max,
                                              const InversionConfig& cfg = {}) {
    cfg.validate();
    if (P.kind() != TransformKind::PGF)
        throw PreconditionError("extract_pgf_coeffs: input must be a PGF, got " +
                                std::string(to_string(P.kind())));
    if (n_max >= cfg.dft_size / 2)
        throw PreconditionError("extract_pgf_coeffs: n_max must be < dft_size/2");
    PgfSpectrum spec = sample_pgf_spectrum(P, cfg);
    if (spec.max_imag_residue > cfg.tolerance)
        throw NotAPowerSeriesError("not-a-power-series: imaginary residue " +
                                   std::to_string(spec.max_imag_residue) + " exceeds tolerance");
    spec.coeffs.resize(n_max + 1);
    return spec.coeffs;
}

/// Uniform positive grid for finite-difference complete-monotonicity checks.
inline std::vector<double> default_cm_grid() { return linspace(0.1, 6.4, 64); }

/// Necessary-condition certificate for complete monotonicity: forward finite
/// differences delta^k phi on a uniform grid must satisfy
/// (-1)^k delta^k phi >= -tolerance for k = 0..order. The report lists the
/// worst violation per order. This certifies a necessary condition only;
/// complete monotonicity is not decidable from finitely many samples.
inline DecompositionReport check_complete_monotonicity(const Transform& phi, int order,
                                                       const std::vector<double>& grid,
                                                       double tolerance = 1e-8) {
    if (order < 2) throw PreconditionError("check_complete_monotonicity: order must be >= 2");
    if (grid.size() < static_cast<std::size_t>(order) + 2)
        throw PreconditionError("check_complete_monotonicity: grid too short for requested order");
    if (!(grid.front() > 0.0))
        throw PreconditionError("check_complete_monotonicity: grid must be positive");
    const double h = grid[1] - grid[0];
    if (!(h > 0.0)) throw PreconditionError("check_complete_monotonicity: grid must be increasing");
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        if (std::abs((grid[i + 1] - grid[i]) - h) > 1e-9 * std::abs(grid.back()))
            throw PreconditionError("check_complete_monotonicity: grid must be uniformly spaced");

    std::vector<double> diff(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) diff[i] = phi.real_value(grid[i]);

    DecompositionReport rep;
    rep.identity = IdentityKind::CompleteMonotonicity;
    rep.max_residual = 0.0;
    double worst = std::numeric_limits<double>::infinity();
    std::string detail;
    double sign = 1.0;
    for (int k = 0; k <= order; ++k) {
        double worst_k = std::numeric_limits<double>::infinity();
        const std::size_t m = grid.size() - static_cast<std::size_t>(k);
        for (std::size_t i = 0; i < m; ++i) worst_k = std::min(worst_k, sign * diff[i]);
        detail += (k ? "; " : "") + std::string("order ") + std::to_string(k) +
                  " min: " + std::to_string(worst_k);
        worst = std::min(worst, worst_k);
        // next forward difference, flipped sign for (-1)^{k+1}
        for (std::size_t i = 0; i + 1 < m; ++i) diff[i] = diff[i + 1] - diff[i];
        sign = -sign;
    }
    rep.certificate = ValidityCertificate{
        "finite-diff-cm", worst,
        GridInfo{grid.front(), grid.back(), grid.size(), "linear"}, true, detail};
    rep.verdict = judge(0.0, 1.0, worst, tolerance);
    rep.caveat = "necessary-condition certificate: finite differences up to order " +
                 std::to_string(order) + " on a finite grid; not a proof of complete monotonicity";
    return rep;
}

/// The LT -> PGF bridge: P(s) = phi(1 - s).
inline Transform lt_to_pgf(const Transform& phi) {
    if (phi.kind() != TransformKind::LT)
        throw PreconditionError("lt_to_pgf: input must be a LT, got " +
                                std::string(to_string(phi.kind())));
    return Transform(TransformKind::PGF,
                     [phi](Complex z) { return phi(Complex(1.0, 0.0) - z); },
                     "pgf-bridge(" + phi.label() + ")", Support::NonnegativeIntegers,
                     phi.necessary_only());
}

/// The PGF -> LT bridge: phi(s) = P(1 - s), admitted only after the
/// complete-monotonicity necessary check passes. The check cannot certify
/// full complete monotonicity, so the returned transform is flagged
/// necessary-only.
inline Transform pgf_to_lt(const Transform& P, const InversionConfig& cfg = {}) {
    cfg.validate();
    if (P.kind() != TransformKind::PGF)
        throw PreconditionError("pgf_to_lt: input must be a PGF, got " +
                                std::string(to_string(P.kind())));
    Transform candidate(TransformKind::LT,
                        [P](Complex z) { return P(Complex(1.0, 0.0) - z); },
                        "lt-bridge(" + P.label() + ")", Support::NonnegativeReals,
                        /*necessary_only=*/true);
    const std::vector<double> grid = default_cm_grid();
    const DecompositionReport rep = check_complete_monotonicity(candidate, 6, grid, cfg.tolerance);
    if (rep.verdict == Verdict::Fail) {
        // locate the first violating finite difference (lowest order, then lowest point)
        std::vector<double> diff(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) diff[i] = candidate.real_value(grid[i]);
        double sign = 1.0;
        for (int k = 0; k <= 6; ++k) {
            const std::size_t m = grid.size() - static_cast<std::size_t>(k);
            for (std::size_t i = 0; i < m; ++i)
                if (sign * diff[i] < -cfg.tolerance)
                    throw NotCompletelyMonotoneError(
                        "pgf_to_lt: P(1-s) fails the complete-monotonicity necessary check at order " +
                            std::to_string(k) + ", s=" + std::to_string(grid[i]) +
                            ", signed difference " + std::to_string(sign * diff[i]),
                        k, grid[i], sign * diff[i]);
            for (std::size_t i = 0; i + 1 < m; ++i) diff[i] = diff[i + 1] - diff[i];
            sign = -sign;
        }
        throw NotCompletelyMonotoneError("pgf_to_lt: complete-monotonicity check failed", -1, 0.0,
                                         rep.certificate.min_value);
    }
    return candidate;
}

}  // namespace semisd
