#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semisd/autoregressive.hpp"
#include "semisd/errors.hpp"
#include "semisd/mixtures.hpp"
#include "semisd/semistable.hpp"
#include "semisd/subordination.hpp"
#include "semisd/transform.hpp"

namespace semisd {

/// One row of the corpus registry.
struct RecipeInfo {
    std::string name;
    std::string params;
    std::string description;
};

inline const std::vector<RecipeInfo>& recipe_registry() {
    static const std::vector<RecipeInfo> rows = {
        {"gaussian", "sigma=1", "CF exp(-sigma^2 s^2 / 2)"},
        {"cauchy", "gamma=1", "CF exp(-gamma |s|)"},
        {"semistable", "alpha, b, eps=0, phase=0, scale=1",
         "CF exp(-psi), psi = scale |s|^alpha (1 + eps cos(2 pi ln|s|/ln(1/b) + phase))"},
        {"linnik", "alpha=1, scale=1", "CF 1 / (1 + scale |s|^alpha), the alpha-Laplace law"},
        {"gen-semi-alpha-laplace", "beta=1, alpha, b, eps=0, phase=0, scale=1",
         "CF (1 + psi(s))^-beta with a semi-stable exponent psi"},
        {"gamma-lt", "beta=1", "LT (1 + x)^-beta of the gamma(1, beta) law"},
        {"exponential-lt", "", "LT 1 / (1 + x) of the unit exponential law"},
        {"degenerate-lt", "lambda=1", "LT exp(-lambda x) of the point mass at lambda"},
        {"pgf-poisson", "lambda=1", "PGF exp(lambda (s - 1))"},
        {"pgf-geometric", "p=0.5", "PGF p / (1 - (1-p) s), pmf p (1-p)^k"},
        {"pgf-point-mass", "m=1", "PGF s^m, point mass at the integer m"},
        {"cf-point-mass", "x=1", "CF exp(i s x), point mass at x"},
        {"mixture-cf", "(phi, base nested)", "CF phi(-ln omega(s)) for a mixing LT phi and ID base omega"},
        {"mixture-pgf", "(phi, base nested)", "PGF phi(-ln Q(s)) for a mixing LT phi and ID base Q"},
    };
    return rows;
}

namespace detail {

class ParamReader {
public:
    explicit ParamReader(std::string recipe, const std::map<std::string, double>& params)
        : recipe_(std::move(recipe)), params_(params) {}

    double get(const std::string& key, double fallback) {
        used_.insert(key);
        auto it = params_.find(key);
        return it == params_.end() ? fallback : it->second;
    }

    double require(const std::string& key) {
        used_.insert(key);
        auto it = params_.find(key);
        if (it == params_.end())
            throw PreconditionError(recipe_ + ": missing required parameter '" + key + "'");
        return it->second;
    }

    void finish() const {
        for (const auto& [key, value] : params_)
            if (!used_.contains(key))
                throw PreconditionError(recipe_ + ": unknown parameter '" + key + "'");
    }

private:
    std::string recipe_;
    const std::map<std::string, double>& params_;
    std::set<std::string> used_;
};

}  // namespace detail

struct RecipeObject {
    Transform transform;
    std::optional<SemiStableExponent> exponent;
    std::string name;
    std::map<std::string, double> resolved;
};

/// Construct a corpus object by name. Unknown recipe names and unknown
/// parameters are rejected before any computation.
inline RecipeObject make_recipe(const std::string& name,
                                const std::map<std::string, double>& params = {}) {
    detail::ParamReader rd(name, params);
    if (name == "gaussian") {
        const double sigma = rd.get("sigma", 1.0);
        rd.finish();
        if (!(sigma > 0.0)) throw PreconditionError("gaussian: sigma must be > 0");
        const SemiStableExponent psi(2.0, 0.5, 0.0, 0.0, sigma * sigma / 2.0);
        return {semistable_cf(psi), psi, name, {{"sigma", sigma}}};
    }
    if (name == "cauchy") {
        const double gamma = rd.get("gamma", 1.0);
        rd.finish();
        if (!(gamma > 0.0)) throw PreconditionError("cauchy: gamma must be > 0");
        const SemiStableExponent psi(1.0, 0.5, 0.0, 0.0, gamma);
        return {semistable_cf(psi), psi, name, {{"gamma", gamma}}};
    }
    if (name == "semistable") {
        const double alpha = rd.require("alpha");
        const double b = rd.require("b");
        const double eps = rd.get("eps", 0.0);
        const double phase = rd.get("phase", 0.0);
        const double scale = rd.get("scale", 1.0);
        const bool override_eps = rd.get("allow_uncertified_eps", 0.0) != 0.0;
        rd.finish();
        const SemiStableExponent psi(alpha, b, eps, phase, scale, override_eps);
        return {semistable_cf(psi), psi, name,
                {{"alpha", alpha}, {"b", b}, {"eps", eps}, {"phase", phase}, {"scale", scale}}};
    }
    if (name == "linnik") {
        const double alpha = rd.get("alpha", 1.0);
        const double scale = rd.get("scale", 1.0);
        rd.finish();
        const SemiStableExponent psi(alpha, 0.5, 0.0, 0.0, scale);
        return {generalized_semi_alpha_laplace(psi, 1.0), psi, name,
                {{"alpha", alpha}, {"scale", scale}}};
    }
    if (name == "gen-semi-alpha-laplace") {
        const double beta = rd.get("beta", 1.0);
        const double alpha = rd.require("alpha");
        const double b = rd.require("b");
        const double eps = rd.get("eps", 0.0);
        const double phase = rd.get("phase", 0.0);
        const double scale = rd.get("scale", 1.0);
        rd.finish();
        const SemiStableExponent psi(alpha, b, eps, phase, scale);
        return {generalized_semi_alpha_laplace(psi, beta), psi, name,
                {{"beta", beta}, {"alpha", alpha}, {"b", b}, {"eps", eps}, {"phase", phase},
                 {"scale", scale}}};
    }
    if (name == "gamma-lt" || name == "exponential-lt") {
        const double beta = name == "gamma-lt" ? rd.get("beta", 1.0) : 1.0;
        rd.finish();
        if (!(beta > 0.0)) throw PreconditionError("gamma-lt: beta must be > 0");
        Transform t(TransformKind::LT,
                    [beta](Complex z) { return std::pow(Complex(1.0, 0.0) + z, -beta); },
                    name + "(beta=" + std::to_string(beta) + ")", Support::NonnegativeReals,
                    false, {"SD(corpus)"});
        return {t, std::nullopt, name, {{"beta", beta}}};
    }
    if (name == "degenerate-lt") {
        const double lambda = rd.get("lambda", 1.0);
        rd.finish();
        if (!(lambda >= 0.0)) throw PreconditionError("degenerate-lt: lambda must be >= 0");
        Transform t(TransformKind::LT,
                    [lambda](Complex z) { return std::exp(-lambda * z); },
                    "degenerate-lt(lambda=" + std::to_string(lambda) + ")",
                    Support::NonnegativeReals, false, {"SD(corpus)"});
        return {t, std::nullopt, name, {{"lambda", lambda}}};
    }
    if (name == "pgf-poisson") {
        const double lambda = rd.get("lambda", 1.0);
        rd.finish();
        if (!(lambda > 0.0)) throw PreconditionError("pgf-poisson: lambda must be > 0");
        Transform t(TransformKind::PGF,
                    [lambda](Complex z) { return std::exp(lambda * (z - 1.0)); },
                    "pgf-poisson(lambda=" + std::to_string(lambda) + ")");
        return {t, std::nullopt, name, {{"lambda", lambda}}};
    }
    if (name == "pgf-geometric") {
        const double p = rd.get("p", 0.5);
        rd.finish();
        if (!(p > 0.0 && p < 1.0)) throw PreconditionError("pgf-geometric: p must be in (0,1)");
        Transform t(TransformKind::PGF,
                    [p](Complex z) { return p / (1.0 - (1.0 - p) * z); },
                    "pgf-geometric(p=" + std::to_string(p) + ")");
        return {t, std::nullopt, name, {{"p", p}}};
    }
    if (name == "pgf-point-mass") {
        const double m = rd.get("m", 1.0);
        rd.finish();
        if (m < 0.0 || m != std::floor(m))
            throw PreconditionError("pgf-point-mass: m must be a nonnegative integer");
        const int mi = static_cast<int>(m);
        Transform t(TransformKind::PGF, [mi](Complex z) { return std::pow(z, mi); },
                    "pgf-point-mass(m=" + std::to_string(mi) + ")");
        return {t, std::nullopt, name, {{"m", m}}};
    }
    if (name == "cf-point-mass") {
        const double x = rd.get("x", 1.0);
        rd.finish();
        Transform t(TransformKind::CF,
                    [x](Complex z) { return std::exp(Complex(0.0, 1.0) * x * z); },
                    "cf-point-mass(x=" + std::to_string(x) + ")");
        return {t, std::nullopt, name, {{"x", x}}};
    }
    std::string known;
    for (const auto& r : recipe_registry()) known += (known.empty() ? "" : ", ") + r.name;
    throw PreconditionError("unknown recipe '" + name + "'; supported: " + known);
}

/// Closed-form marginal/innovation samplers where the corpus has them.
inline std::optional<MarginalSamplers> closed_form_ar1_samplers(const RecipeObject& recipe,
                                                                double rho) {
    if (recipe.name == "gaussian") {
        const double sigma = recipe.resolved.at("sigma");
        const double isigma = sigma * std::sqrt(1.0 - rho * rho);
        return MarginalSamplers{
            [sigma](RngEngine& rng) { return sample_gaussian(0.0, sigma, rng); },
            [isigma](RngEngine& rng) { return sample_gaussian(0.0, isigma, rng); }};
    }
    if (recipe.name == "cauchy") {
        const double gamma = recipe.resolved.at("gamma");
        const double igamma = gamma * (1.0 - rho);
        return MarginalSamplers{
            [gamma](RngEngine& rng) { return sample_cauchy(gamma, rng); },
            [igamma](RngEngine& rng) { return sample_cauchy(igamma, rng); }};
    }
    if (recipe.name == "cf-point-mass") {
        const double x = recipe.resolved.at("x");
        const double ix = x * (1.0 - rho);
        return MarginalSamplers{[x](RngEngine&) { return x; }, [ix](RngEngine&) { return ix; }};
    }
    return std::nullopt;
}

// --- subordination ingredients ----------------------------------------------

/// Directing clocks available for simulation, by name.
inline DirectingProcess make_directing(const std::string& name,
                                       const std::map<std::string, double>& params = {}) {
    detail::ParamReader rd(name, params);
    if (name == "gamma-lt" || name == "exponential-lt") {
        const double beta = name == "gamma-lt" ? rd.get("beta", 1.0) : 1.0;
        rd.finish();
        return DirectingProcess{
            make_recipe(name, name == "gamma-lt" ? params : std::map<std::string, double>{})
                .transform,
            [beta](double dt, RngEngine& rng) { return sample_gamma(beta * dt, 1.0, rng); },
            name + "(beta=" + std::to_string(beta) + ")"};
    }
    if (name == "degenerate-lt") {
        const double lambda = rd.get("lambda", 1.0);
        rd.finish();
        return DirectingProcess{make_recipe(name, params).transform,
                                [lambda](double dt, RngEngine&) { return lambda * dt; },
                                "degenerate-lt(lambda=" + std::to_string(lambda) + ")"};
    }
    if (name == "stable-subordinator") {
        const double eta = rd.require("eta");
        rd.finish();
        if (!(eta > 0.0 && eta < 1.0))
            throw PreconditionError("stable-subordinator: eta must be in (0,1)");
        Transform lt(TransformKind::LT,
                     [eta](Complex z) { return std::exp(-std::pow(z, eta)); },
                     "stable-subordinator-lt(eta=" + std::to_string(eta) + ")",
                     Support::NonnegativeReals);
        return DirectingProcess{
            lt,
            [eta](double dt, RngEngine& rng) {
                return std::pow(dt, 1.0 / eta) * sample_positive_stable(eta, rng);
            },
            "stable-subordinator(eta=" + std::to_string(eta) + ")"};
    }
    if (name == "compound-poisson") {
        const double rate = rd.get("rate", 1.0);
        const double jump_mean = rd.get("jump_mean", 1.0);
        rd.finish();
        Transform lt(TransformKind::LT,
                     [rate, jump_mean](Complex z) {
                         return std::exp(-rate * (1.0 - 1.0 / (1.0 + jump_mean * z)));
                     },
                     "compound-poisson-lt(rate=" + std::to_string(rate) +
                         ",jump_mean=" + std::to_string(jump_mean) + ")",
                     Support::NonnegativeReals);
        return DirectingProcess{lt,
                                [rate, jump_mean](double dt, RngEngine& rng) {
                                    const long long jumps = sample_poisson(rate * dt, rng);
                                    return jumps == 0
                                               ? 0.0
                                               : sample_gamma(static_cast<double>(jumps),
                                                              jump_mean, rng);
                                },
                                "compound-poisson(rate=" + std::to_string(rate) + ")"};
    }
    throw SamplerUnavailableError(
        "sampler-unavailable: unknown directing process '" + name +
        "'; supported: gamma-lt, exponential-lt, degenerate-lt, stable-subordinator, "
        "compound-poisson");
}

namespace detail {

/// Per-increment CDF-inversion sampler for exponents without a closed-form
/// increment law. The truncation limit adapts to the elapsed operational
/// time so the CF tail stays below tolerance.
inline double numeric_increment_sample(const SemiStableExponent& psi, double tau,
                                       RngEngine& rng) {
    const double eff = psi.scale() * tau * (1.0 - std::abs(psi.h_epsilon()));
    const double U = std::pow(25.0 / eff, 1.0 / psi.alpha());
    InversionConfig cfg;
    cfg.grid_halfwidth = U;
    cfg.grid_points = 4001;
    cfg.tolerance = 1e-6;
    Transform cf(TransformKind::CF,
                 [psi, tau](Complex z) {
                     return Complex(std::exp(-tau * psi(z.real())), 0.0);
                 },
                 "increment-cf");
    const double u = std::clamp(uniform01(rng), 1e-7, 1.0 - 1e-7);
    double lo = -1.0, hi = 1.0;
    for (int i = 0; i < 60 && invert_cf_to_cdf(cf, lo, cfg) > u; ++i) lo *= 2.0;
    for (int i = 0; i < 60 && invert_cf_to_cdf(cf, hi, cfg) < u; ++i) hi *= 2.0;
    for (int i = 0; i < 60 && hi - lo > 1e-9 * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (invert_cf_to_cdf(cf, mid, cfg) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Driven Levy processes available for simulation, by name.
inline DrivenProcess make_driven(const std::string& name,
                                 const std::map<std::string, double>& params = {}) {
    detail::ParamReader rd(name, params);
    if (name == "brownian" || name == "gaussian") {
        const double scale = rd.get("scale", 0.5);
        rd.finish();
        if (!(scale > 0.0)) throw PreconditionError("brownian: scale must be > 0");
        const SemiStableExponent psi(2.0, 0.5, 0.0, 0.0, scale);
        return DrivenProcess{[psi](double s) { return psi(s); },
                             [scale](double tau, RngEngine& rng) {
                                 return sample_gaussian(0.0, std::sqrt(2.0 * scale * tau), rng);
                             },
                             "brownian(scale=" + std::to_string(scale) + ")", psi};
    }
    if (name == "cauchy") {
        const double scale = rd.get("scale", 1.0);
        rd.finish();
        if (!(scale > 0.0)) throw PreconditionError("cauchy: scale must be > 0");
        const SemiStableExponent psi(1.0, 0.5, 0.0, 0.0, scale);
        return DrivenProcess{[psi](double s) { return psi(s); },
                             [scale](double tau, RngEngine& rng) {
                                 return sample_cauchy(scale * tau, rng);
                             },
                             "cauchy(scale=" + std::to_string(scale) + ")", psi};
    }
    if (name == "sym-stable") {
        const double alpha = rd.require("alpha");
        const double scale = rd.get("scale", 1.0);
        rd.finish();
        const SemiStableExponent psi(alpha, 0.5, 0.0, 0.0, scale);
        return DrivenProcess{[psi](double s) { return psi(s); },
                             [alpha, scale](double tau, RngEngine& rng) {
                                 return std::pow(scale * tau, 1.0 / alpha) *
                                        sample_sym_stable(alpha, rng);
                             },
                             "sym-stable(alpha=" + std::to_string(alpha) + ")", psi};
    }
    if (name == "semistable") {
        const double alpha = rd.require("alpha");
        const double b = rd.require("b");
        const double eps = rd.get("eps", 0.0);
        const double phase = rd.get("phase", 0.0);
        const double scale = rd.get("scale", 1.0);
        rd.finish();
        const SemiStableExponent psi(alpha, b, eps, phase, scale);
        return DrivenProcess{[psi](double s) { return psi(s); },
                             [psi](double tau, RngEngine& rng) {
                                 return detail::numeric_increment_sample(psi, tau, rng);
                             },
                             "semistable(alpha=" + std::to_string(alpha) +
                                 ",b=" + std::to_string(b) + ",eps=" + std::to_string(eps) + ")",
                             psi};
    }
    throw SamplerUnavailableError(
        "sampler-unavailable: unknown driven process '" + name +
        "'; supported: brownian, gaussian, cauchy, sym-stable, semistable");
}

}  // namespace semisd
