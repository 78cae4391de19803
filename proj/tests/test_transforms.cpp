#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "semisd/inversion.hpp"
#include "semisd/recipes.hpp"
#include "semisd/transform.hpp"
#include "oracles.hpp"

using namespace semisd;

namespace {

Transform exponential_lt() { return make_recipe("exponential-lt").transform; }

}  // namespace

TEST_CASE("lt_to_pgf maps the exponential LT to the geometric PGF", "[transforms]") {
    const Transform P = lt_to_pgf(exponential_lt());
    REQUIRE(P.kind() == TransformKind::PGF);
    REQUIRE(P.support() == Support::NonnegativeIntegers);
    // P(s) = 1/(2-s); coefficients must match p_k = (1/2)^{k+1}
    for (double s : linspace(0.0, 1.0, 11))
        CHECK(P.pgf(s) == Catch::Approx(1.0 / (2.0 - s)).epsilon(1e-14));
    const std::vector<double> coeffs = extract_pgf_coeffs(P, 20);
    for (int k = 0; k <= 20; ++k)
        CHECK(coeffs[k] == Catch::Approx(oracles::geometric_pmf(0.5, k)).margin(1e-12));
}

TEST_CASE("lt_to_pgf maps a point mass to the Poisson PGF", "[transforms]") {
    const Transform P = lt_to_pgf(make_recipe("degenerate-lt", {{"lambda", 2.5}}).transform);
    for (double s : linspace(0.0, 1.0, 11))
        CHECK(P.pgf(s) == Catch::Approx(std::exp(-2.5 * (1.0 - s))).epsilon(1e-14));
    const std::vector<double> coeffs = extract_pgf_coeffs(P, 12);
    for (int k = 0; k <= 12; ++k)
        CHECK(coeffs[k] == Catch::Approx(oracles::poisson_pmf(2.5, k)).margin(1e-12));
}

TEST_CASE("lt_to_pgf identity case: mass at zero", "[transforms]") {
    const Transform P = lt_to_pgf(make_recipe("degenerate-lt", {{"lambda", 0.0}}).transform);
    for (double s : linspace(0.0, 1.0, 5)) CHECK(P.pgf(s) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("lt_to_pgf rejects non-LT input", "[transforms]") {
    CHECK_THROWS_AS(lt_to_pgf(make_recipe("gaussian").transform), PreconditionError);
}

TEST_CASE("pgf_to_lt inverts the bridge", "[transforms]") {
    const Transform P = lt_to_pgf(exponential_lt());
    const Transform phi = pgf_to_lt(P);
    REQUIRE(phi.kind() == TransformKind::LT);
    REQUIRE(phi.necessary_only());
    for (double s : linspace(0.0, 5.0, 26))
        CHECK(phi.lt(s) == Catch::Approx(1.0 / (1.0 + s)).margin(1e-14));
}

TEST_CASE("pgf_to_lt round trip over the LT corpus", "[transforms]") {
    for (const char* name : {"exponential-lt", "gamma-lt", "degenerate-lt"}) {
        const Transform phi = make_recipe(name).transform;
        const Transform back = pgf_to_lt(lt_to_pgf(phi));
        for (double s : linspace(0.0, 5.0, 51))
            CHECK(back.lt(s) == Catch::Approx(phi.lt(s)).margin(1e-12));
    }
}

TEST_CASE("pgf_to_lt handles Poisson and rejects the mass at one", "[transforms]") {
    const Transform poisson = make_recipe("pgf-poisson", {{"lambda", 1.5}}).transform;
    const Transform phi = pgf_to_lt(poisson);
    for (double s : linspace(0.0, 4.0, 21))
        CHECK(phi.lt(s) == Catch::Approx(std::exp(-1.5 * s)).margin(1e-13));

    // P(s) = s gives phi(s) = 1 - s, negative past s = 1: order-0 violation
    const Transform mass_at_one = make_recipe("pgf-point-mass", {{"m", 1.0}}).transform;
    try {
        pgf_to_lt(mass_at_one);
        FAIL("expected NotCompletelyMonotoneError");
    } catch (const NotCompletelyMonotoneError& e) {
        CHECK(e.order == 0);
        CHECK(e.at > 1.0);
        CHECK(e.value < 0.0);
    }
}

TEST_CASE("Gil-Pelaez inversion matches the normal CDF series", "[transforms]") {
    const Transform f = make_recipe("gaussian").transform;
    CHECK(invert_cf_to_cdf(f, 0.0) == Catch::Approx(0.5).margin(1e-9));
    CHECK(invert_cf_to_cdf(f, 1.0) == Catch::Approx(0.841345).margin(1e-6));
    for (double x : linspace(-3.0, 3.0, 13))
        CHECK(invert_cf_to_cdf(f, x) == Catch::Approx(oracles::normal_cdf(x)).margin(1e-6));
}

TEST_CASE("Gil-Pelaez inversion matches the Cauchy arctangent CDF", "[transforms]") {
    const Transform f = make_recipe("cauchy").transform;
    InversionConfig cfg;
    cfg.grid_points = 200001;  // the |s| kink at 0 costs quadrature order
    CHECK(invert_cf_to_cdf(f, 1.0, cfg) == Catch::Approx(0.75).margin(1e-6));
    for (double x : linspace(-3.0, 3.0, 13))
        CHECK(invert_cf_to_cdf(f, x, cfg) == Catch::Approx(oracles::cauchy_cdf(x)).margin(1e-6));
}

TEST_CASE("Gil-Pelaez output is a nondecreasing function of x", "[transforms]") {
    InversionConfig cfg;
    cfg.grid_points = 50001;
    for (const char* name : {"gaussian", "cauchy"}) {
        const Transform f = make_recipe(name).transform;
        double prev = -1.0;
        for (double x : linspace(-4.0, 4.0, 41)) {
            const double F = invert_cf_to_cdf(f, x, cfg);
            CHECK(F >= prev - 1e-6);
            prev = F;
        }
    }
}

TEST_CASE("Gil-Pelaez refuses a heavy tail at the truncation limit", "[transforms]") {
    // Linnik CF decays like 1/|s|: far above tolerance at |s| = 200
    const Transform f = make_recipe("linnik").transform;
    CHECK_THROWS_AS(invert_cf_to_cdf(f, 0.0), TruncationUnsafeError);
}

TEST_CASE("PGF coefficient extraction: Poisson, point mass, geometric", "[transforms]") {
    const Transform poisson = make_recipe("pgf-poisson", {{"lambda", 3.0}}).transform;
    const std::vector<double> p = extract_pgf_coeffs(poisson, 5);
    for (int k = 0; k <= 5; ++k)
        CHECK(p[k] == Catch::Approx(oracles::poisson_pmf(3.0, k)).margin(1e-12));

    const std::vector<double> q =
        extract_pgf_coeffs(make_recipe("pgf-point-mass", {{"m", 2.0}}).transform, 6);
    for (int k = 0; k <= 6; ++k)
        CHECK(q[k] == Catch::Approx(k == 2 ? 1.0 : 0.0).margin(1e-12));

    const std::vector<double> g =
        extract_pgf_coeffs(make_recipe("pgf-geometric").transform, 20);
    for (int k = 0; k <= 20; ++k)
        CHECK(g[k] == Catch::Approx(oracles::geometric_pmf(0.5, k)).margin(1e-12));
}

TEST_CASE("PGF coefficients are near-probabilities for every corpus PGF", "[transforms]") {
    for (auto [name, params] :
         std::vector<std::pair<std::string, std::map<std::string, double>>>{
             {"pgf-poisson", {{"lambda", 3.0}}},
             {"pgf-poisson", {{"lambda", 0.2}}},
             {"pgf-geometric", {{"p", 0.5}}},
             {"pgf-geometric", {{"p", 0.2}}},
             {"pgf-point-mass", {{"m", 4.0}}}}) {
        const Transform P = make_recipe(name, params).transform;
        const std::vector<double> coeffs = extract_pgf_coeffs(P, 300);
        double sum = 0.0;
        for (double c : coeffs) {
            CHECK(c >= -1e-9);
            sum += c;
        }
        CHECK(sum <= 1.0 + 1e-9);
    }
}

TEST_CASE("coefficient extraction flags a non-power-series input", "[transforms]") {
    // conjugate-asymmetric evaluator: coefficients cannot be real
    const Transform bad(TransformKind::PGF,
                        [](Complex z) { return z * std::polar(1.0, 0.3); }, "skewed");
    CHECK_THROWS_AS(extract_pgf_coeffs(bad, 4), NotAPowerSeriesError);
}

TEST_CASE("coefficient extraction preconditions", "[transforms]") {
    const Transform P = make_recipe("pgf-poisson").transform;
    InversionConfig cfg;
    cfg.dft_size = 64;
    CHECK_THROWS_AS(extract_pgf_coeffs(P, 32, cfg), PreconditionError);
    CHECK_NOTHROW(extract_pgf_coeffs(P, 31, cfg));
}

TEST_CASE("complete monotonicity certificate on archetypes", "[transforms]") {
    CHECK(check_complete_monotonicity(exponential_lt(), 6, default_cm_grid()).verdict ==
          Verdict::Pass);
    CHECK(check_complete_monotonicity(make_recipe("degenerate-lt").transform, 6,
                                      default_cm_grid())
              .verdict == Verdict::Pass);
}

TEST_CASE("complete monotonicity certificate rejects cosine", "[transforms]") {
    const Transform cosine(TransformKind::LT,
                           [](Complex z) { return std::cos(z); }, "cos(s) clipped");
    const std::vector<double> grid = linspace(0.05, 2.95, 59);
    const DecompositionReport rep = check_complete_monotonicity(cosine, 6, grid);
    CHECK(rep.verdict == Verdict::Fail);
    // independent finite-difference oracle confirms the order-2 violation
    const double delta2 = oracles::forward_difference([](double s) { return std::cos(s); },
                                                      0.05, grid[1] - grid[0], 2);
    CHECK(delta2 < 0.0);  // so (-1)^2 delta^2 < 0 on the left end
}

TEST_CASE("complete monotonicity check validates its grid", "[transforms]") {
    const Transform phi = exponential_lt();
    CHECK_THROWS_AS(check_complete_monotonicity(phi, 1, default_cm_grid()), PreconditionError);
    CHECK_THROWS_AS(check_complete_monotonicity(phi, 6, {0.1, 0.2, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}),
                    PreconditionError);
    CHECK_THROWS_AS(check_complete_monotonicity(phi, 6, linspace(-1.0, 1.0, 64)),
                    PreconditionError);
}

TEST_CASE("constructed CFs are Hermitian on a 101-point grid", "[transforms]") {
    for (auto [name, params] :
         std::vector<std::pair<std::string, std::map<std::string, double>>>{
             {"gaussian", {}},
             {"cauchy", {}},
             {"semistable", {{"alpha", 1.0}, {"b", 0.5}, {"eps", 0.03}}},
             {"linnik", {}},
             {"cf-point-mass", {{"x", 1.7}}}}) {
        const Transform f = make_recipe(name, params).transform;
        for (double s : symmetric_grid(5.0, 101)) {
            const Complex lhs = f(-s);
            const Complex rhs = std::conj(f(s));
            CHECK(std::abs(lhs - rhs) <= 1e-15);
        }
        CHECK(std::abs(f(0.0) - 1.0) <= 1e-15);
    }
}

TEST_CASE("LT corpus members are nonincreasing on a sampled grid", "[transforms]") {
    for (const char* name : {"exponential-lt", "gamma-lt", "degenerate-lt"}) {
        const Transform phi = make_recipe(name).transform;
        double prev = phi.lt(0.0);
        CHECK(prev == Catch::Approx(1.0).margin(1e-15));
        for (double s : linspace(0.1, 10.0, 100)) {
            const double v = phi.lt(s);
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("PGF corpus members are nondecreasing on [0,1]", "[transforms]") {
    for (const char* name : {"pgf-poisson", "pgf-geometric", "pgf-point-mass"}) {
        const Transform P = make_recipe(name).transform;
        double prev = P.pgf(0.0);
        for (double s : linspace(0.0, 1.0, 51)) {
            const double v = P.pgf(s);
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
        CHECK(P.pgf(1.0) == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("InversionConfig validation", "[transforms]") {
    InversionConfig cfg;
    cfg.grid_points = 8;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg = InversionConfig{};
    cfg.dft_size = 100;  // not a power of two
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
}
