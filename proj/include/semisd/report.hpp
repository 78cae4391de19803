#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semisd/errors.hpp"

namespace semisd {

inline constexpr int kReportSchemaVersion = 1;

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Which identity a report certifies.
enum class IdentityKind {
    CfSemiSd,           // f(s) = f(bs) f0(s)
    CfSdFullRange,      // the same at every c of a finite c-grid
    LtSemiSd,           // phi(s) = phi(cs) phi0(s)
    PgfDiscreteSemiSd,  // P(s) = P(1-c+cs) P0(s)
    ExponentScaling,    // psi(u) = a psi(bu)
    CompleteMonotonicity,
    EmpiricalStationarity,
};

inline const char* to_string(IdentityKind k) {
    switch (k) {
        case IdentityKind::CfSemiSd: return "CF-semi-SD(b)";
        case IdentityKind::CfSdFullRange: return "CF-SD-full-range";
        case IdentityKind::LtSemiSd: return "LT-semi-SD(c)";
        case IdentityKind::PgfDiscreteSemiSd: return "PGF-discrete-semi-SD(c)";
        case IdentityKind::ExponentScaling: return "exponent-scaling";
        case IdentityKind::CompleteMonotonicity: return "complete-monotonicity";
        case IdentityKind::EmpiricalStationarity: return "empirical-stationarity";
    }
    return "?";
}

struct GridInfo {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t points = 0;
    std::string scale = "linear";  // "linear" | "log" | "unit-circle"
};

/// Outcome of a validity check on an extracted factor: the minimum
/// eigenvalue of the PSD grid matrix (CF case), the minimum extracted
/// coefficient (PGF case), or the worst signed finite difference (LT case).
/// All of these are necessary conditions, never proofs.
struct ValidityCertificate {
    std::string method;  // "psd-grid-eigen" | "coeff-nonneg-dft" | "finite-diff-cm" | "mc-envelope" | "<...>-precheck"
    double min_value = 0.0;
    GridInfo grid;
    bool necessary_only = true;
    std::string detail;
};

struct DecompositionReport {
    IdentityKind identity = IdentityKind::CfSemiSd;
    std::vector<double> parameters;  // the b / c / rho value(s) tested
    double max_residual = 0.0;       // worst |lhs - rhs| over the test grid
    ValidityCertificate certificate;
    Verdict verdict = Verdict::Fail;
    std::string caveat;
    std::vector<DecompositionReport> sub_reports;

    bool passed() const { return verdict == Verdict::Pass; }
};

/// Verdict rule shared by every check. A pass needs both a small residual
/// and a certificate value above -tolerance. Certificate values between
/// -tolerance and -10x tolerance sit at the resolution limit of a
/// necessary-condition check and are reported inconclusive rather than
/// failed; below -10x tolerance the failure is solid.
inline Verdict judge(double max_residual, double residual_tol, double certificate_min,
                     double certificate_tol) {
    if (!(max_residual <= residual_tol)) return Verdict::Fail;
    if (!(certificate_min == certificate_min)) return Verdict::Fail;  // NaN
    if (certificate_min >= -certificate_tol) return Verdict::Pass;
    if (certificate_min >= -10.0 * certificate_tol) return Verdict::Inconclusive;
    return Verdict::Fail;
}

/// Thrown where a certified transform is required but certification failed;
/// carries the failing report.
class NotSemiSdError : public Error {
public:
    NotSemiSdError(const std::string& what, DecompositionReport report)
        : Error(what), report(std::move(report)) {}
    DecompositionReport report;
};

// --- JSON serialization (shared report schema) -------------------------------

inline void to_json(nlohmann::json& j, const GridInfo& g) {
    j = nlohmann::json{{"lo", g.lo}, {"hi", g.hi}, {"points", g.points}, {"scale", g.scale}};
}

inline void to_json(nlohmann::json& j, const ValidityCertificate& c) {
    j = nlohmann::json{{"method", c.method},
                       {"min_value", c.min_value},
                       {"grid", c.grid},
                       {"necessary_only", c.necessary_only},
                       {"detail", c.detail}};
}

inline void to_json(nlohmann::json& j, const DecompositionReport& r) {
    j = nlohmann::json{{"schema_version", kReportSchemaVersion},
                       {"identity", to_string(r.identity)},
                       {"parameter", r.parameters},
                       {"max_residual", r.max_residual},
                       {"min_eigenvalue_or_coeff", r.certificate.min_value},
                       {"certificate", r.certificate},
                       {"verdict", to_string(r.verdict)},
                       {"caveat", r.caveat}};
    if (!r.sub_reports.empty()) j["sub_reports"] = r.sub_reports;
}

}  // namespace semisd
