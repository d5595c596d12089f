#pragma once

#include <stdexcept>
#include <string>

namespace ucilab {

// Base for all library errors. CLI maps these to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A theorem check that came out negative. Not necessarily a bug: on a finite
// window it may mean "the interesting behaviour happens past the window".
// CLI maps these to exit code 2.
struct FalsificationCandidate : Error {
  using Error::Error;
};

// coefficient_fields
struct NonPositiveAlpha : Error { using Error::Error; };
struct UnknownProfile : Error { using Error::Error; };
struct ParameterOutOfRange : Error { using Error::Error; };

// rates
struct NegativeInput : Error { using Error::Error; };
struct EmptyTail : Error { using Error::Error; };

// ode1d
struct IntegratorFailure : Error { using Error::Error; };
struct WindowExceeded : Error { using Error::Error; };
struct KappaPrimeNotGreater : Error { using Error::Error; };
struct KappaZero : Error { using Error::Error; };
struct PreconditionNotSteep : Error { using Error::Error; };
struct NoBounceInWindow : FalsificationCandidate { using FalsificationCandidate::FalsificationCandidate; };
struct NotNormalizable : Error { using Error::Error; };
struct ResidualTooLarge : Error { using Error::Error; };

// spectral
struct ConvergenceFailure : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };

// harmonics
struct QuadratureTooCoarse : Error { using Error::Error; };
struct WindowContainsOrigin : Error { using Error::Error; };

// parabolic
struct DomainError : Error { using Error::Error; };
struct KappaBelowThreshold : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct NormalizationCollarEmpty : Error { using Error::Error; };

// cli
struct ConfigParse : Error { using Error::Error; };

} // namespace ucilab
