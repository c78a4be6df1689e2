#ifndef RMATRIX_LAX_FLOWS_HPP
#define RMATRIX_LAX_FLOWS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "rmatrix/dialgebra.hpp"
#include "rmatrix/liealg.hpp"

namespace rmatrix {

struct IntegratorConfig {
  double step = 1e-3;
  double t_end = 1.0;
  enum class Method { RK4 } method = Method::RK4;
  int record_every = 1;
};

/// Time-sampled Lax matrices with a conserved-quantity ledger.
struct Trajectory {
  AlgebraPtr algebra;
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> states;
  /// invariants[t][k] = H_{k+1}(L(t)) for the recorded trace powers
  std::vector<Eigen::VectorXd> invariants;
  /// eigenvalues sorted by (re, im) at each recorded time
  std::vector<Eigen::VectorXcd> eigenvalues;
};

/// Right-hand side of the Lax equation, dL/dt = [L, M(L)] with
/// M = m_matrix(R, H, L, side). The orientation is pinned by the open Toda
/// chain regression: for the skew/upper split it reproduces the Flaschka
/// equations a1' = 2 b1^2, ..., bj' = bj (a_{j+1} - a_j) verbatim.
AlgebraElement lax_rhs(const REndomorphism& r, const PolynomialObservable& h,
                       const AlgebraElement& l, Side side = Side::Plus);

/// Classical fixed-step RK4 on the vectorised Lax equation. Records the
/// trace powers H_1 .. H_{m-1} and the sorted spectrum at every
/// record_every-th step. Throws StepUnderflow for dt < 1e-12.
Trajectory integrate(const REndomorphism& r, const PolynomialObservable& h,
                     const AlgebraElement& l0, const IntegratorConfig& config);

struct ConservationReport {
  Eigen::VectorXd invariant_drift;  ///< per trace power, max |H(t) - H(0)|
  double eigenvalue_drift = 0.0;    ///< max sorted-eigenvalue deviation
};

/// Throws EmptyTrajectory.
ConservationReport conservation_report(const Trajectory& traj);

/// Sorted eigenvalues (by real part, then imaginary part).
Eigen::VectorXcd sorted_eigenvalues(const Eigen::MatrixXd& m);

/// Random traceless symmetric tridiagonal states, the shape of the Toda
/// coadjoint orbit. Deterministic for a fixed seed.
AlgebraElement random_tridiagonal_state(const AlgebraPtr& algebra, std::uint64_t seed);

/// Max |{H_i, H_j}_R(L)| over all pairs of the given observables at
/// `samples` random orbit-shaped states (or states drawn by `sampler`).
double involution_scan(const REndomorphism& r,
                       const std::vector<PolynomialObservable>& hamiltonians, int samples,
                       std::uint64_t seed,
                       const std::function<AlgebraElement(std::uint64_t)>& sampler = {});

}  // namespace rmatrix

#endif
