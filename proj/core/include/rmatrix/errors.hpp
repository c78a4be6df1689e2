#ifndef RMATRIX_ERRORS_HPP
#define RMATRIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rmatrix {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lie algebra construction / element handling
struct DependentBasis : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct AlgebraMismatch : Error { using Error::Error; };
struct DegeneratePairing : Error { using Error::Error; };
struct ProjectionLoss : Error { using Error::Error; };

// R-endomorphisms and the dialgebra double
struct NotSubalgebra : Error { using Error::Error; };
struct NotComplementary : Error { using Error::Error; };
struct NotMCYBE : Error { using Error::Error; };

// Tensor r-matrices
struct DimensionMismatch : Error { using Error::Error; };
struct SymPartNotInvariant : Error { using Error::Error; };
struct NotAntisymmetric : Error { using Error::Error; };
struct SingularSymmetricPart : Error { using Error::Error; };
struct DualJacobiFails : Error { using Error::Error; };

// Factorisation
struct Singular : Error { using Error::Error; };
struct OutsideFactorisationDomain : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };

// Flows
struct StepUnderflow : Error { using Error::Error; };
struct EmptyTrajectory : Error { using Error::Error; };

// Toda constructions
struct LengthMismatch : Error { using Error::Error; };
struct BadSize : Error { using Error::Error; };
struct BadPeriod : Error { using Error::Error; };
struct NonPositiveEta : Error { using Error::Error; };

// Input files
struct ParseError : Error { using Error::Error; };

}  // namespace rmatrix

#endif
