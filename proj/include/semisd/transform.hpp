#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "semisd/errors.hpp"

namespace semisd {

using Complex = std::complex<double>;

enum class TransformKind { CF, LT, PGF };
enum class Support { RealLine, NonnegativeReals, NonnegativeIntegers };

inline const char* to_string(TransformKind k) {
    switch (k) {
        case TransformKind::CF: return "CF";
        case TransformKind::LT: return "LT";
        case TransformKind::PGF: return "PGF";
    }
    return "?";
}

inline const char* to_string(Support s) {
    switch (s) {
        case Support::RealLine: return "real-line";
        case Support::NonnegativeReals: return "nonnegative-reals";
        case Support::NonnegativeIntegers: return "nonnegative-integers";
    }
    return "?";
}

inline Support natural_support(TransformKind k) {
    switch (k) {
        case TransformKind::CF: return Support::RealLine;
        case TransformKind::LT: return Support::NonnegativeReals;
        case TransformKind::PGF: return Support::NonnegativeIntegers;
    }
    return Support::RealLine;
}

/// An evaluable characteristic function, Laplace transform or probability
/// generating function with domain metadata.
///
/// The evaluator maps complex to complex so that every kind can also be
/// sampled off its natural axis (PGFs on the unit circle for coefficient
/// extraction, LTs at complex arguments for the PGF bridge). Instances are
/// immutable; evaluation is pure and safe to call from multiple threads.
class Transform {
public:
    using Evaluator = std::function<Complex(Complex)>;

    Transform(TransformKind kind, Evaluator eval, std::string label)
        : Transform(kind, std::move(eval), std::move(label), natural_support(kind)) {}

    Transform(TransformKind kind, Evaluator eval, std::string label, Support support,
              bool necessary_only = false, std::vector<std::string> tags = {})
        : kind_(kind),
          support_(support),
          eval_(std::move(eval)),
          label_(std::move(label)),
          necessary_only_(necessary_only),
          tags_(std::move(tags)) {
        if (!eval_) throw PreconditionError("Transform: evaluator must be callable");
    }

    Complex operator()(Complex z) const { return eval_(z); }
    Complex operator()(double s) const { return eval_(Complex(s, 0.0)); }

    /// CF value at a real argument.
    Complex cf(double s) const {
        require_kind(TransformKind::CF, "cf()");
        return eval_(Complex(s, 0.0));
    }

    /// LT value at s >= 0. The evaluator must return a (numerically) real value there.
    double lt(double s) const {
        require_kind(TransformKind::LT, "lt()");
        return real_value(s);
    }

    /// PGF value at s in [0, 1].
    double pgf(double s) const {
        require_kind(TransformKind::PGF, "pgf()");
        return real_value(s);
    }

    /// Real value at a real argument, for any kind whose evaluator is real
    /// on the real axis. Throws if a non-negligible imaginary part shows up.
    double real_value(double s) const {
        const Complex v = eval_(Complex(s, 0.0));
        if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
            throw PreconditionError("transform '" + label_ +
                                    "' is not real-valued at s=" + std::to_string(s));
        return v.real();
    }

    TransformKind kind() const { return kind_; }
    Support support() const { return support_; }
    const std::string& label() const { return label_; }

    /// True when validity of this transform was certified by a
    /// necessary-condition check only (finite-grid PSD, finite-order
    /// complete monotonicity, truncated coefficient extraction).
    bool necessary_only() const { return necessary_only_; }

    const std::vector<std::string>& tags() const { return tags_; }
    bool has_tag(const std::string& t) const {
        return std::find(tags_.begin(), tags_.end(), t) != tags_.end();
    }

    Transform with_tag(std::string t) const {
        Transform copy = *this;
        copy.tags_.push_back(std::move(t));
        return copy;
    }

private:
    void require_kind(TransformKind k, const char* where) const {
        if (kind_ != k)
            throw PreconditionError(std::string(where) + ": transform '" + label_ + "' has kind " +
                                    to_string(kind_) + ", expected " + to_string(k));
    }

    TransformKind kind_;
    Support support_;
    Evaluator eval_;
    std::string label_;
    bool necessary_only_;
    std::vector<std::string> tags_;
};

// --- grid helpers ----------------------------------------------------------

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 2) throw PreconditionError("linspace: need at least 2 points");
    std::vector<double> g(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

/// Logarithmically spaced grid on [lo, hi], lo > 0.
inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo)) throw PreconditionError("logspace: need 0 < lo < hi");
    std::vector<double> g = linspace(std::log(lo), std::log(hi), n);
    for (double& x : g) x = std::exp(x);
    g.front() = lo;
    g.back() = hi;
    return g;
}

/// Symmetric grid of n points on [-halfwidth, halfwidth]; odd n puts a point at 0.
inline std::vector<double> symmetric_grid(double halfwidth, std::size_t n) {
    std::vector<double> g = linspace(-halfwidth, halfwidth, n);
    // force exact symmetry so Hermitian checks see s and -s bit-equal
    for (std::size_t i = 0; i < n / 2; ++i) g[n - 1 - i] = -g[i];
    if (n % 2 == 1) g[n / 2] = 0.0;
    return g;
}

}  // namespace semisd
