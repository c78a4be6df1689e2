#ifndef RMATRIX_TOLERANCES_HPP
#define RMATRIX_TOLERANCES_HPP

namespace rmatrix {

/// Default tolerance ledger. Every entry can be overridden per call;
/// the CLI additionally scales all of them by RMATRIX_TOL_OVERRIDE.
struct Tolerances {
  double closure = 1e-10;      ///< subalgebra / span closure checks
  double identity = 1e-12;     ///< exact algebraic identities
  double fd_relative = 1e-5;   ///< finite-difference gradient checks

  Tolerances scaled(double factor) const {
    return Tolerances{closure * factor, identity * factor, fd_relative * factor};
  }
};

}  // namespace rmatrix

#endif
