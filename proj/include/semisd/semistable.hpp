#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "semisd/decompose.hpp"
#include "semisd/errors.hpp"
#include "semisd/report.hpp"
#include "semisd/transform.hpp"

namespace semisd {

/// Largest log-periodic amplitude admitted without an explicit override.
/// The exact admissibility region for exp(-|u|^alpha h(u)) to be a CF is
/// not known in closed form; constructions inside this cap are certified
/// numerically downstream.
inline double h_eps_max(double /*alpha*/) { return 0.05; }

/// Levy exponent of a semi-stable(a, b) law:
///
///   psi(u) = scale * |u|^alpha * h(u),
///   h(u)   = 1 + eps * cos(2*pi * ln|u| / ln(1/b) + phase),
///
/// so that h is periodic in ln|u| with period ln(1/b) and the scaling
/// identity psi(u) = a psi(bu) holds identically with a = b^{-alpha}.
/// a is always derived from (alpha, b), never set independently.
/// psi(0) = 0 by continuity. Instances are immutable and evaluation is pure.
class SemiStableExponent {
public:
    SemiStableExponent(double alpha, double b, double h_epsilon = 0.0, double h_phase = 0.0,
                       double scale = 1.0, bool allow_uncertified_epsilon = false)
        : alpha_(alpha),
          b_(b),
          h_epsilon_(h_epsilon),
          scale_(scale),
          uncertified_epsilon_(false) {
        if (!(alpha > 0.0 && alpha <= 2.0))
            throw PreconditionError("SemiStableExponent: alpha must be in (0, 2]");
        if (!(b > 0.0 && b < 1.0))
            throw PreconditionError("SemiStableExponent: b must be in (0, 1)");
        if (!(scale > 0.0)) throw PreconditionError("SemiStableExponent: scale must be > 0");
        if (!(std::abs(h_epsilon) < 1.0))
            throw PreconditionError("SemiStableExponent: |h_epsilon| must be < 1 to keep h > 0");
        if (std::abs(h_epsilon) > h_eps_max(alpha)) {
            if (!allow_uncertified_epsilon)
                throw PossiblyInvalidExponentError(
                    "possibly-invalid-exponent: |h_epsilon|=" + std::to_string(std::abs(h_epsilon)) +
                    " exceeds the admissibility cap " + std::to_string(h_eps_max(alpha)) +
                    "; pass the override to proceed (CF validity is then checked downstream)");
            uncertified_epsilon_ = true;
        }
        a_ = std::pow(b_, -alpha_);
        period_ = -std::log(b_);  // ln(1/b)
        h_phase_ = std::fmod(h_phase, 2.0 * std::numbers::pi);
        if (h_phase_ < 0.0) h_phase_ += 2.0 * std::numbers::pi;
    }

    double operator()(double u) const {
        if (u == 0.0) return 0.0;
        const double au = std::abs(u);
        return scale_ * std::pow(au, alpha_) * log_periodic(au);
    }

    /// h(u), evaluated at |u| > 0.
    double log_periodic(double au) const {
        if (h_epsilon_ == 0.0) return 1.0;
        const double arg = 2.0 * std::numbers::pi * std::log(au) / period_ + h_phase_;
        return 1.0 + h_epsilon_ * std::cos(arg);
    }

    double alpha() const { return alpha_; }
    double b() const { return b_; }
    double a() const { return a_; }
    double h_epsilon() const { return h_epsilon_; }
    double h_phase() const { return h_phase_; }
    double scale() const { return scale_; }

    /// b^alpha = 1/a, the contraction the exponent applies per period.
    double c() const { return 1.0 / a_; }

    /// True when |h_epsilon| exceeds the admissibility cap and the caller
    /// overrode; the downstream CF-validity check is mandatory then.
    bool uncertified_epsilon() const { return uncertified_epsilon_; }

    std::string describe() const {
        std::ostringstream os;
        os << "semistable(alpha=" << alpha_ << ",b=" << b_ << ",eps=" << h_epsilon_
           << ",phase=" << h_phase_ << ",scale=" << scale_ << ")";
        return os.str();
    }

private:
    double alpha_, b_, a_, h_epsilon_, h_phase_, scale_, period_;
    bool uncertified_epsilon_;
};

inline SemiStableExponent make_exponent(double alpha, double b, double h_epsilon = 0.0,
                                        double h_phase = 0.0, double scale = 1.0,
                                        bool allow_uncertified_epsilon = false) {
    return SemiStableExponent(alpha, b, h_epsilon, h_phase, scale, allow_uncertified_epsilon);
}

/// Default grid for scaling-identity checks: 1001 log-spaced points over
/// six decades.
inline std::vector<double> default_scaling_grid() { return logspace(1e-3, 1e3, 1001); }

/// Residual of the scaling identity psi(u) = a psi(bu) for an arbitrary
/// exponent. Degenerate (identically zero on the grid) inputs pass and are
/// flagged as such.
inline DecompositionReport check_scaling_identity(const std::function<double(double)>& psi,
                                                  double a, double b,
                                                  const std::vector<double>& grid = default_scaling_grid(),
                                                  double tolerance = 1e-12) {
    if (grid.empty()) throw PreconditionError("check_scaling_identity: empty grid");
    double residual = 0.0;
    double magnitude = 0.0;
    for (double u : grid) {
        if (u == 0.0) throw PreconditionError("check_scaling_identity: grid must be nonzero");
        residual = std::max(residual, std::abs(psi(u) - a * psi(b * u)));
        magnitude = std::max(magnitude, std::abs(psi(u)));
    }
    DecompositionReport rep;
    rep.identity = IdentityKind::ExponentScaling;
    rep.parameters = {b};
    rep.max_residual = residual;
    rep.certificate = ValidityCertificate{
        "scaling-residual", -residual,
        GridInfo{grid.front(), grid.back(), grid.size(), "log"}, false,
        "max |psi(u) - a psi(bu)| with a=" + std::to_string(a)};
    rep.verdict = residual <= tolerance ? Verdict::Pass : Verdict::Fail;
    rep.caveat = magnitude == 0.0 ? "degenerate: psi vanishes identically on the grid" : "";
    return rep;
}

inline DecompositionReport check_scaling_identity(const SemiStableExponent& psi,
                                                  const std::vector<double>& grid = default_scaling_grid(),
                                                  double tolerance = 1e-12) {
    return check_scaling_identity([&psi](double u) { return psi(u); }, psi.a(), psi.b(), grid,
                                  tolerance);
}

/// The CF of the exponent: f(s) = exp(-psi(s)), real and even (strict-sense
/// symmetric representation). For an exponent built past the epsilon cap
/// the finite-grid PSD certificate is run here and must pass.
inline Transform semistable_cf(const SemiStableExponent& psi) {
    Transform f(TransformKind::CF,
                [psi](Complex z) {
                    if (std::abs(z.imag()) > 1e-12 * (1.0 + std::abs(z.real())))
                        throw PreconditionError("semistable CF is defined for real arguments");
                    return Complex(std::exp(-psi(z.real())), 0.0);
                },
                "cf(" + psi.describe() + ")", Support::RealLine,
                /*necessary_only=*/psi.h_epsilon() != 0.0);
    if (psi.uncertified_epsilon()) {
        const ValidityCertificate cert = is_valid_cf(f, default_cf_grid());
        if (cert.min_value < -kDefaultEigenTol)
            throw PossiblyInvalidExponentError(
                "possibly-invalid-exponent: exp(-psi) failed the PSD grid certificate (min "
                "eigenvalue " + std::to_string(cert.min_value) + ")");
    }
    return f;
}

/// The explicit semi-SD innovation of a semi-stable law:
/// f0(s) = {f(bs)}^{a-1} = exp(-(a-1) psi(bs)), so that
/// f(s) = f(bs) f0(s) holds identically.
inline Transform semistable_innovation(const SemiStableExponent& psi) {
    const double a = psi.a();
    const double b = psi.b();
    return Transform(TransformKind::CF,
                     [psi, a, b](Complex z) {
                         if (std::abs(z.imag()) > 1e-12 * (1.0 + std::abs(z.real())))
                             throw PreconditionError("semistable CF is defined for real arguments");
                         return Complex(std::exp(-(a - 1.0) * psi(b * z.real())), 0.0);
                     },
                     "innovation-power(" + psi.describe() + ")", Support::RealLine,
                     /*necessary_only=*/psi.h_epsilon() != 0.0);
}

}  // namespace semisd
