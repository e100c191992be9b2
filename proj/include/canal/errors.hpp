#pragma once
#include <stdexcept>
#include <string>

namespace canal {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// |c' ^ c''| vanishes: curvature (and the Frenet normal) is undefined.
struct BiRegularityFailure : Error {
    using Error::Error;
};

/// |dr/ds| >= 1: the sphere family has no real envelope (cuspidal edge).
struct RadialDomainError : Error {
    using Error::Error;
};

/// The k1 denominator is not negative: the immersion condition fails at the point.
struct DegenerateDenominator : Error {
    using Error::Error;
};

/// Adaptive ODE step size fell below the representable minimum.
struct StepSizeUnderflow : Error {
    using Error::Error;
};

/// Return map does not interpolate/validate as a Moebius transformation.
struct FitFailure : Error {
    using Error::Error;
};

/// Root bracketing found no sign change; endpoints are reported, never widened.
struct BracketFailure : Error {
    using Error::Error;
};

/// A construction-time invariant failed; the message names the invariant.
struct ConstructionError : Error {
    using Error::Error;
};

/// Malformed user input (spec files, CLI arguments, preconditions).
struct InputError : Error {
    using Error::Error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureNonConvergence : Error {
    using Error::Error;
};

}  // namespace canal
