#ifndef RMATRIX_BIALGEBRA_HPP
#define RMATRIX_BIALGEBRA_HPP

#include <Eigen/Dense>
#include <vector>

#include "rmatrix/dialgebra.hpp"
#include "rmatrix/liealg.hpp"

namespace rmatrix {

/// Element of the dual space in the abstract coefficient duality: the
/// coordinates xi_i against the dual basis e^i with <e^i, e_j> = delta_ij.
/// This is distinct from the trace-form identification used elsewhere;
/// conversions between the two go through the Gram matrix explicitly.
class DualElement {
 public:
  DualElement(AlgebraPtr algebra, Eigen::VectorXd coeffs);

  const AlgebraPtr& algebra() const { return m_algebra; }
  const Eigen::VectorXd& coeffs() const { return m_coeffs; }

  DualElement operator+(const DualElement& other) const;
  DualElement operator-(const DualElement& other) const;
  DualElement operator*(double scalar) const;

  /// Natural pairing <xi, X>.
  double pair(const AlgebraElement& x) const;

 private:
  AlgebraPtr m_algebra;
  Eigen::VectorXd m_coeffs;
};

/// xi = <X | .> as an element of the coefficient dual (xi = G x).
DualElement trace_dual(const AlgebraElement& x);
/// Inverse identification (x = G^-1 xi); throws DegeneratePairing.
AlgebraElement element_from_dual(const DualElement& xi);

/// Coadjoint action in the coefficient duality:
/// (ad*_X xi)_j = -<xi, [X, e_j]>.
DualElement coadjoint_dual(const AlgebraElement& x, const DualElement& xi);

/// Tensor r = r^{ij} e_i (x) e_j with skew part a and symmetric part s.
class TensorR {
 public:
  TensorR(AlgebraPtr algebra, Eigen::MatrixXd coeffs);

  const AlgebraPtr& algebra() const { return m_algebra; }
  const Eigen::MatrixXd& coeffs() const { return m_coeffs; }
  Eigen::MatrixXd skew_part() const { return 0.5 * (m_coeffs - m_coeffs.transpose()); }
  Eigen::MatrixXd sym_part() const { return 0.5 * (m_coeffs + m_coeffs.transpose()); }

  TensorR skew() const { return TensorR(m_algebra, skew_part()); }
  TensorR sym() const { return TensorR(m_algebra, sym_part()); }

 private:
  AlgebraPtr m_algebra;
  Eigen::MatrixXd m_coeffs;
};

/// Element of g (x) g (x) g over the basis, used for Schouten brackets and
/// Yang-Baxter residuals.
class ThreeTensor {
 public:
  explicit ThreeTensor(int dim) : m_dim(dim), m_data(dim * dim * dim, 0.0) {}

  int dim() const { return m_dim; }
  double& at(int i, int j, int k) { return m_data[(i * m_dim + j) * m_dim + k]; }
  double at(int i, int j, int k) const { return m_data[(i * m_dim + j) * m_dim + k]; }

  double max_abs() const;
  /// Max deviation from total antisymmetry under index permutations.
  double antisymmetry_defect() const;

  ThreeTensor operator-(const ThreeTensor& other) const;
  ThreeTensor operator+(const ThreeTensor& other) const;
  ThreeTensor operator*(double scalar) const;

 private:
  int m_dim;
  std::vector<double> m_data;
};

/// The map g* -> g attached to r: <eta, rbar(xi)> = r(xi, eta),
/// i.e. coefficients (rbar xi)^j = xi_i r^{ij}.
AlgebraElement rbar(const TensorR& r, const DualElement& xi);

/// Action of X on g (x) g: (ad2_X u)^{ij} = c^i_{kl} X^k u^{lj} + c^j_{kl} X^k u^{il}.
Eigen::MatrixXd ad2(const LieAlgebra& algebra, const Eigen::VectorXd& x,
                    const Eigen::MatrixXd& u);

/// Coboundary of r evaluated at X: the 1-cocycle (delta r)(X) = ad2_X r.
Eigen::MatrixXd coboundary(const TensorR& r, const AlgebraElement& x);

/// Max over basis X of || ad2_X s || for the symmetric part of r.
double sym_invariance_residual(const TensorR& r);

/// Dual bracket [xi, eta]_r = ad*_{a xi} eta - ad*_{a eta} xi, computed with
/// the skew part (valid because delta r = delta a when s is ad-invariant).
/// Throws SymPartNotInvariant when the precondition fails.
DualElement bracket_star(const TensorR& r, const DualElement& xi, const DualElement& eta);

/// Max Jacobi residual of [.,.]_r over all dual basis triples.
double dual_jacobi_residual(const TensorR& r);

/// Schouten bracket [[a,a]] of a skew tensor, evaluated on dual basis triples:
/// [[a,a]](xi,eta,zeta) = -2(<zeta,[a xi, a eta]> + <xi,[a eta, a zeta]> +
/// <eta,[a zeta, a xi]>). Throws NotAntisymmetric.
ThreeTensor schouten(const TensorR& a);

/// <r,r>(xi,eta,zeta) = <zeta, [rbar xi, rbar eta] - rbar [xi,eta]_r>.
/// Vanishing certifies quasi-triangularity. Throws SymPartNotInvariant.
ThreeTensor rr_bracket(const TensorR& r);

/// [r12,r13] + [r12,r23] + [r13,r23] from the structure constants; agrees
/// with rr_bracket whenever the symmetric part is ad-invariant.
ThreeTensor cybe_tensor(const TensorR& r);

/// Matrix of Poisson brackets between the matrix-entry coordinate functions,
/// {L (x), L} = [L (x) I + I (x) L, rho(r)] in the Kronecker lift of the
/// defining representation. L need not lie in the basis span.
Eigen::MatrixXd tensor_poisson_bracket(const TensorR& r, const Eigen::MatrixXd& l);

/// Residual of the 1-cocycle condition for gamma = delta r over all basis
/// pairs: ad2_X(gamma(Y)) - ad2_Y(gamma(X)) - gamma([X,Y]).
double cocycle_condition_residual(const TensorR& r);

/// For factorisable r (invertible ad-invariant symmetric part), the
/// endomorphism R = abar o sbar^-1 on coefficient space. Throws
/// SingularSymmetricPart.
REndomorphism to_r_endomorphism(const TensorR& r);

enum class RClass { Triangular, QuasiTriangular, Factorisable, None };

struct BialgebraReport {
  double sym_invariance = 0.0;   ///< max || ad2_X s ||
  double schouten_norm = 0.0;    ///< max entry of [[a,a]]
  double rr_norm = 0.0;          ///< max entry of <r,r>
  double sym_part_norm = 0.0;
  double sym_min_singular = 0.0;
  RClass classification = RClass::None;
};

const char* to_string(RClass c);

BialgebraReport classify(const TensorR& r, const Tolerances& tol = {});

/// Element (X, xi) of the double g (+) g*.
struct DoubleElement {
  Eigen::VectorXd g_part;
  Eigen::VectorXd dual_part;
};

/// Double of a coboundary bialgebra: the 2n-dimensional algebra on g (+) g*
/// whose bracket extends both subalgebras, [X, xi] = ad*_X xi - ad*_xi X,
/// carrying the invariant product <(X,xi)|(Y,eta)> = <xi,Y> + <eta,X>.
class BialgebraDouble {
 public:
  BialgebraDouble(TensorR r);

  const AlgebraPtr& base() const { return m_r.algebra(); }
  const TensorR& r() const { return m_r; }
  int dim() const { return 2 * m_r.algebra()->dim(); }

  DoubleElement bracket(const DoubleElement& u, const DoubleElement& v) const;
  double product(const DoubleElement& u, const DoubleElement& v) const;
  DoubleElement basis_element(int i) const;

  /// Max of <[u,v]|w> + <v|[u,w]> over all basis triples.
  double invariance_residual() const;

 private:
  TensorR m_r;
};

/// Requires the dual bracket to satisfy Jacobi (residual <= 1e-8), else
/// throws DualJacobiFails.
BialgebraDouble build_bialgebra_double(const TensorR& r);

}  // namespace rmatrix

#endif
