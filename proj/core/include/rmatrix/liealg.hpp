#ifndef RMATRIX_LIEALG_HPP
#define RMATRIX_LIEALG_HPP

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "rmatrix/errors.hpp"
#include "rmatrix/tolerances.hpp"

namespace rmatrix {

class AlgebraElement;

/// Finite-dimensional matrix Lie algebra with an explicit basis.
///
/// Stores the basis e_1..e_n (real m-by-m matrices), the structure
/// constants c^k_ij with [e_i, e_j] = c^k_ij e_k, and the Gram matrix
/// G_ij = tr(e_i e_j) of the trace form. Immutable after construction;
/// safe to share read-only across threads.
class LieAlgebra : public std::enable_shared_from_this<LieAlgebra> {
 public:
  /// Result of projecting a raw matrix onto the basis span.
  struct Projection {
    Eigen::VectorXd coeffs;
    double defect = 0.0;  ///< Frobenius distance between input and span
  };

  /// Builds the algebra from a basis of square matrices. Verifies linear
  /// independence and closure of the span under the commutator, then
  /// populates structure constants and the Gram matrix.
  ///
  /// Throws DependentBasis or NotClosed.
  static std::shared_ptr<const LieAlgebra> build(std::string name,
                                                 std::vector<Eigen::MatrixXd> basis,
                                                 const Tolerances& tol = {});

  const std::string& name() const { return m_name; }
  int dim() const { return static_cast<int>(m_basis.size()); }
  int matrix_size() const { return static_cast<int>(m_basis.front().rows()); }
  const std::vector<Eigen::MatrixXd>& basis() const { return m_basis; }

  /// Structure constants, one n-by-n matrix per output index:
  /// structure()[k](i, j) = c^k_ij.
  const std::vector<Eigen::MatrixXd>& structure() const { return m_structure; }

  /// Gram matrix of the trace form, G_ij = tr(e_i e_j).
  const Eigen::MatrixXd& gram() const { return m_gram; }
  bool gram_invertible() const { return m_gram_invertible; }

  /// Matrix realisation of a coefficient vector.
  Eigen::MatrixXd materialise(const Eigen::VectorXd& coeffs) const;

  /// Least-squares re-expansion of a matrix in the basis. The defect is
  /// the Frobenius norm of the part of the matrix outside the span.
  Projection project(const Eigen::MatrixXd& mat) const;

  /// Matrix of ad_X on coefficient vectors: adjoint(x) * y = coeffs([X, Y]).
  Eigen::MatrixXd adjoint_matrix(const Eigen::VectorXd& x) const;

  /// Coefficient-space bracket: z^k = c^k_ij x^i y^j.
  Eigen::VectorXd bracket_coeffs(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// Solves G z = rhs for the trace-pairing identification.
  /// Throws DegeneratePairing if the trace form is singular.
  Eigen::VectorXd solve_gram(const Eigen::VectorXd& rhs) const;

  /// Max Jacobi residual of the structure constants over all index quadruples.
  double jacobi_residual() const;

  AlgebraElement element(Eigen::VectorXd coeffs) const;
  AlgebraElement element_from_matrix(const Eigen::MatrixXd& mat) const;
  AlgebraElement basis_element(int i) const;
  AlgebraElement zero() const;

 private:
  LieAlgebra() = default;

  std::string m_name;
  std::vector<Eigen::MatrixXd> m_basis;
  std::vector<Eigen::MatrixXd> m_structure;
  Eigen::MatrixXd m_gram;
  Eigen::MatrixXd m_vectorised;  // (m*m) x n, column i = vec(e_i)
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> m_vec_solver;
  Eigen::FullPivLU<Eigen::MatrixXd> m_gram_solver;
  bool m_gram_invertible = false;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Element of a Lie algebra stored as a coefficient vector over the basis.
/// Dual elements are identified with algebra elements through the trace form.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, Eigen::VectorXd coeffs);

  const AlgebraPtr& algebra() const { return m_algebra; }
  const Eigen::VectorXd& coeffs() const { return m_coeffs; }
  Eigen::MatrixXd matrix() const { return m_algebra->materialise(m_coeffs); }

  /// Frobenius norm of the matrix realisation.
  double norm() const { return matrix().norm(); }

  AlgebraElement operator+(const AlgebraElement& other) const;
  AlgebraElement operator-(const AlgebraElement& other) const;
  AlgebraElement operator*(double scalar) const;
  AlgebraElement operator-() const { return (*this) * (-1.0); }

 private:
  AlgebraPtr m_algebra;
  Eigen::VectorXd m_coeffs;
};

inline AlgebraElement operator*(double scalar, const AlgebraElement& x) { return x * scalar; }

/// Throws AlgebraMismatch unless both elements live on the same algebra.
void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y);

/// Lie bracket [X, Y], evaluated through the structure constants.
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// Trace form tr(XY).
double pairing(const AlgebraElement& x, const AlgebraElement& y);

/// Coadjoint action under the trace identification: the element L' with
/// <L'|Y> = -<L|[X,Y]> for every Y, i.e. ad*_X L = [X, L].
AlgebraElement coadjoint(const AlgebraElement& x, const AlgebraElement& l);

/// Observable on the (trace-identified) dual: either a rescaled trace power
/// H_l(L) = tr(L^{l+1})/(l+1) or a linear functional X(L) = <L|X>.
class PolynomialObservable {
 public:
  enum class Kind { TracePower, Linear };

  /// H_l(L) = scale * tr(L^{l+1})/(l+1), l >= 1.
  static PolynomialObservable trace_power(int ell, double scale = 1.0);
  static PolynomialObservable linear(AlgebraElement direction);

  Kind kind() const { return m_kind; }
  int ell() const { return m_ell; }
  double scale() const { return m_scale; }

  double evaluate(const AlgebraElement& l) const;

  /// Gradient with respect to the trace form: L^l for trace powers
  /// (projected onto the basis span), the direction for linear functionals.
  /// Throws ProjectionLoss if the projection loses pairing information.
  AlgebraElement gradient(const AlgebraElement& l) const;

  /// Frobenius distance between the raw gradient matrix and the basis span
  /// (e.g. the trace component of L^l on a traceless algebra).
  double gradient_defect(const AlgebraElement& l) const;

 private:
  PolynomialObservable() = default;

  Kind m_kind = Kind::TracePower;
  int m_ell = 1;
  double m_scale = 1.0;
  std::shared_ptr<AlgebraElement> m_direction;
};

/// Lie-Poisson bracket {phi, psi}(L) = <L|[grad phi(L), grad psi(L)]>.
double lie_poisson(const PolynomialObservable& phi, const PolynomialObservable& psi,
                   const AlgebraElement& l);

// ---------------------------------------------------------------------------
// Stock algebras
// ---------------------------------------------------------------------------

/// An algebra together with a basis-index partition into two subalgebras.
struct SplitAlgebra {
  AlgebraPtr algebra;
  std::vector<int> plus_indices;
  std::vector<int> minus_indices;
};

/// sl(m) with the standard basis: E_ij (i != j) then H_i = E_ii - E_{i+1,i+1}.
AlgebraPtr make_sl(int m);

/// gl(m) with the elementary-matrix basis E_ij, row-major order.
AlgebraPtr make_gl(int m);

/// sl(m) with a basis adapted to the decomposition into skew-symmetric
/// matrices (plus block) and upper-triangular traceless matrices (minus
/// block): F_ij = E_ij - E_ji (i < j), then H_i, then E_ij (i < j).
SplitAlgebra make_sl_skew_upper(int m);

/// gl(m) split into upper-triangular (plus) and strictly lower (minus).
SplitAlgebra make_gl_triangular(int m);

/// The two-dimensional solvable algebra [X, Y] = X, realised by
/// X = E_12 and Y = -E_11 inside gl(2).
AlgebraPtr make_solvable_2d();

}  // namespace rmatrix

#endif
