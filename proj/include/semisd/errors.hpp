#pragma once

#include <stdexcept>
#include <string>

namespace semisd {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition was violated (bad parameter range, wrong
/// transform kind, malformed grid, ...).
class PreconditionError : public Error {
    using Error::Error;
};

/// A transform vanishes on the working grid, so the ratio extraction that
/// the decomposition identities rely on is impossible. Message prefix is
/// "vanishing-cf" or "vanishing-pgf" depending on the input kind.
class VanishingTransformError : public Error {
    using Error::Error;
};

/// The CF magnitude at the truncation limit is too large for the
/// oscillatory-integral inversion to be trusted.
class TruncationUnsafeError : public Error {
    using Error::Error;
};

/// Coefficient extraction left an imaginary residue above tolerance: the
/// sampled function is not a power series with real coefficients.
class NotAPowerSeriesError : public Error {
    using Error::Error;
};

/// The complete-monotonicity necessary check failed. Carries the first
/// violating finite difference (lowest order, then lowest grid point).
class NotCompletelyMonotoneError : public Error {
public:
    NotCompletelyMonotoneError(const std::string& what, int order, double at, double value)
        : Error(what), order(order), at(at), value(value) {}

    int order;     ///< finite-difference order of the violation
    double at;     ///< left endpoint of the violating difference stencil
    double value;  ///< signed value (-1)^k * delta^k phi, negative here
};

/// No sampler is available for the requested ingredient.
class SamplerUnavailableError : public Error {
    using Error::Error;
};

/// Exponent parameters fall outside the numerically certified admissibility
/// region and the caller did not explicitly override.
class PossiblyInvalidExponentError : public Error {
    using Error::Error;
};

}  // namespace semisd
