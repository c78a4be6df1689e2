#ifndef RMATRIX_DIALGEBRA_HPP
#define RMATRIX_DIALGEBRA_HPP

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "rmatrix/liealg.hpp"

namespace rmatrix {

/// Index partition defining a split R = P_+ - P_-.
struct Split {
  std::vector<int> plus;
  std::vector<int> minus;
};

/// Linear operator R on the coefficient space of a Lie algebra. Candidate
/// r-matrix for the second bracket [X,Y]_R = ([R(X),Y] + [X,R(Y)])/2.
class REndomorphism {
 public:
  REndomorphism(AlgebraPtr algebra, Eigen::MatrixXd matrix,
                std::optional<Split> split = std::nullopt);

  const AlgebraPtr& algebra() const { return m_algebra; }
  const Eigen::MatrixXd& matrix() const { return m_matrix; }
  const std::optional<Split>& split() const { return m_split; }

  AlgebraElement apply(const AlgebraElement& x) const;
  /// R_plus/minus = (R +- I)/2 acting on coefficients.
  Eigen::MatrixXd half_shifted(double sign) const;

 private:
  AlgebraPtr m_algebra;
  Eigen::MatrixXd m_matrix;
  std::optional<Split> m_split;
};

/// R = P_+ - P_- from a partition of the basis into two subalgebras.
/// Throws NotComplementary if the index sets fail to partition the basis,
/// NotSubalgebra if either span is not closed under the bracket.
REndomorphism r_from_split(const AlgebraPtr& algebra, std::vector<int> plus,
                           std::vector<int> minus, const Tolerances& tol = {});

/// The second bracket [X,Y]_R = ([R(X),Y] + [X,R(Y)])/2.
AlgebraElement bracket_r(const REndomorphism& r, const AlgebraElement& x,
                         const AlgebraElement& y);

/// Scan result for the modified classical Yang-Baxter equation
/// B(X,Y) + c[X,Y] = 0 with B(X,Y) = [RX,RY] - R([RX,Y] + [X,RY]).
struct MCYBEReport {
  double c = 1.0;
  double max_residual = 0.0;              ///< worst Frobenius norm over basis pairs
  std::array<int, 2> worst_pair{0, 0};
};

/// Scans all basis pairs; c = 0 recovers the plain Yang-Baxter equation.
MCYBEReport mcybe_residual(const REndomorphism& r, double c);

/// Max over basis triples of the cyclic sum [B(e_i,e_j), e_k] + cyc.
/// Zero certifies that [.,.]_R satisfies the Jacobi identity.
double jacobi_residual_r(const REndomorphism& r);

/// {phi, psi}_R(L) = <L | [grad phi, grad psi]_R>.
double lie_poisson_r(const REndomorphism& r, const PolynomialObservable& phi,
                     const PolynomialObservable& psi, const AlgebraElement& l);

enum class Side { Plus, Minus, Symmetric };

/// M(L) for the Lax flow generated by H: R(grad H)/2 for the symmetric
/// choice, (R +- I)(grad H)/2 for the one-sided ones (equal to
/// +-P_{+-}(grad H) when R comes from a split).
AlgebraElement m_matrix(const REndomorphism& r, const PolynomialObservable& h,
                        const AlgebraElement& l, Side side);

/// Residual of R* = -R where R* is the adjoint with respect to the trace
/// form (R* = G^-1 R^T G).
double skew_adjoint_residual(const REndomorphism& r);
bool is_skew_adjoint(const REndomorphism& r, double tol = 1e-10);

/// Double of a dialgebra: the ambient algebra on pairs (X, Y) in g + g with
/// componentwise bracket, together with the complementary projections onto
/// the embedded copy of g_R and the diagonal.
struct DialgebraDouble {
  AlgebraPtr base;
  AlgebraPtr ambient;
  REndomorphism p_gr;
  REndomorphism p_delta;

  /// Split r-matrix on the double, r_d = P_{gR} - P_{delta}.
  REndomorphism r_double() const;
  /// Coefficient vector of (X, Y) in the ambient basis.
  Eigen::VectorXd embed(const AlgebraElement& x, const AlgebraElement& y) const;
};

/// Requires R to satisfy the mCYBE with c = 1 (residual <= 1e-8), else
/// throws NotMCYBE.
DialgebraDouble build_double(const AlgebraPtr& algebra, const REndomorphism& r);

}  // namespace rmatrix

#endif
