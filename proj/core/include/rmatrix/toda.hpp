#ifndef RMATRIX_TODA_HPP
#define RMATRIX_TODA_HPP

#include <Eigen/Dense>
#include <utility>

#include "rmatrix/dialgebra.hpp"
#include "rmatrix/lax_flows.hpp"
#include "rmatrix/liealg.hpp"

namespace rmatrix {

/// Flaschka state of the open chain on N+1 sites: diagonal a (length N+1)
/// and off-diagonal b (length N) of the symmetric tridiagonal Lax matrix.
struct TodaChain {
  Eigen::VectorXd a;
  Eigen::VectorXd b;

  int sites() const { return static_cast<int>(a.size()); }
  int n() const { return static_cast<int>(b.size()); }
};

/// The (N+1) x (N+1) free-end seed: ones on the first off-diagonals.
/// Eigenvalues are 2 cos(k pi / (N+2)). Throws BadSize for N < 1.
Eigen::MatrixXd lambda_matrix(int n);

/// Symmetric tridiagonal Lax matrix from Flaschka data. Throws LengthMismatch.
Eigen::MatrixXd lax_from_flaschka(const TodaChain& chain);

/// Inverse of lax_from_flaschka (reads the two bands).
TodaChain chain_from_lax(const Eigen::MatrixXd& l);

/// Open Toda equations in Flaschka coordinates:
/// a1' = 2 b1^2, a_{N+1}' = -2 bN^2, aj' = 2(bj^2 - b_{j-1}^2),
/// bj' = bj (a_{j+1} - a_j).
std::pair<Eigen::VectorXd, Eigen::VectorXd> toda_rhs(const TodaChain& chain);

/// Open Toda chain as a dialgebra flow: sl(N+1) in the basis adapted to the
/// skew-symmetric / upper-triangular decomposition, the split R = P+ - P-,
/// and H1 = tr(L^2)/2. This R is not skew with respect to the trace form.
class OpenTodaSystem {
 public:
  explicit OpenTodaSystem(int n);

  int n() const { return m_n; }
  const AlgebraPtr& algebra() const { return m_split.algebra; }
  const REndomorphism& r() const { return m_r; }
  PolynomialObservable hamiltonian() const { return PolynomialObservable::trace_power(1); }

  AlgebraElement lambda() const;
  AlgebraElement element(const TodaChain& chain) const;
  TodaChain chain(const AlgebraElement& l) const;

  bool r_is_skew() const;  ///< false here: R* != -R for this split

 private:
  int m_n;
  SplitAlgebra m_split;
  REndomorphism m_r;
};

/// Group data for the Cartan-split construction: diagonal part
/// Y = diag(eta) with det Y = 1 and unit-triangular parts W+- with entries
/// omega. Only the first off-diagonals of omega enter the Flaschka map.
struct CartanCoordinates {
  Eigen::VectorXd eta;
  Eigen::MatrixXd omega_plus;   ///< strictly upper entries of W+
  Eigen::MatrixXd omega_minus;  ///< strictly lower entries of W-

  int sites() const { return static_cast<int>(eta.size()); }
};

/// w_i = (omega+_{i,i+1} - omega-_{i+1,i})/2, z_i = 2 eta_{i+1}/eta_i, then
/// a_1 = w1 z1 / 2, a_i = (w_i z_i - w_{i-1} z_{i-1})/2, a_{N+1} = -wN zN/2,
/// b_i = z_i / 2. Throws NonPositiveEta.
TodaChain cartan_to_flaschka(const CartanCoordinates& coords);

/// Open Toda chain through the Cartan decomposition of sl(N+1):
/// R = P+ - P- over strictly-upper / diagonal / strictly-lower parts.
/// This R is skew with respect to the trace form.
class CartanTodaSystem {
 public:
  explicit CartanTodaSystem(int n);

  int n() const { return m_n; }
  const AlgebraPtr& algebra() const { return m_algebra; }
  const REndomorphism& r() const { return m_r; }

  /// R+- on matrix parts: +-y/2 on the Cartan part, +-w_+- on the matching
  /// nilpotent part, 0 on the opposite one.
  AlgebraElement r_action(const AlgebraElement& x, Side side) const;

  /// Direct evaluation of the coadjoint orbit through lambda:
  /// R*+(W+ Y Lam Y^-1 W+^-1) - R*-(W- Y^-1 Lam Y W-^-1).
  Eigen::MatrixXd orbit_matrix(const CartanCoordinates& coords) const;

  /// Lax rhs of this construction, dL/dt = [R+(grad tr L^2), L]; equals the
  /// Flaschka equations of the open chain, so both pipelines generate the
  /// same flow.
  AlgebraElement flow_rhs(const AlgebraElement& l) const;

  bool r_is_skew() const;  ///< true here

 private:
  int m_n;
  AlgebraPtr m_algebra;
  REndomorphism m_r;
};

/// Periodic two-band lattice in the shift-operator algebra, realised on a
/// finite period: L = a_n S^-1 + b_n + S with the leading band normalised
/// to one.
struct ShiftLattice {
  Eigen::VectorXd a;
  Eigen::VectorXd b;

  int period() const { return static_cast<int>(a.size()); }
};

/// Cyclic band matrix of the lattice: sub-diagonal a (with wrap), diagonal
/// b, super-diagonal 1 (with wrap). Throws BadPeriod for period < 2.
Eigen::MatrixXd bm_lax_matrix(const ShiftLattice& lattice);

/// The non-negative part (L)>=0 = b_n + S as a dense cyclic matrix.
Eigen::MatrixXd bm_upper_matrix(const ShiftLattice& lattice);

/// Band-wise rhs of dL/dt = [(L)>=0, L]:
/// a_n' = a_n (b_n - b_{n-1}), b_n' = a_{n+1} - a_n (indices cyclic).
std::pair<Eigen::VectorXd, Eigen::VectorXd> bm_rhs(const ShiftLattice& lattice);

/// RK4 on the lattice bands; returns states sampled every record_every steps.
struct LatticeTrajectory {
  std::vector<double> times;
  std::vector<ShiftLattice> states;
};
LatticeTrajectory integrate_bm(const ShiftLattice& initial, const IntegratorConfig& config);

/// Whether the band decomposition at threshold k splits the shift-operator
/// algebra into two subalgebras: both closure inequalities 2k >= k and
/// 2k - 2 < k hold exactly for k in {0, 1}.
bool subalgebra_admissibility(int k);

}  // namespace rmatrix

#endif
