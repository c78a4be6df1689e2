#include "rmatrix/factorization.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace rmatrix {

Eigen::MatrixXd expm(const Eigen::MatrixXd& x, double t, double norm_bound) {
  if (x.rows() != x.cols()) throw DimensionMismatch("expm needs a square matrix");
  if (!x.allFinite()) throw Overflow("expm argument has non-finite entries");
  const Eigen::MatrixXd tx = t * x;
  if (tx.norm() > norm_bound)
    throw Overflow("||tX|| exceeds the configured exponential bound");
  return tx.exp();
}

GroupFactors factor_qr(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols()) throw DimensionMismatch("factor_qr needs a square matrix");
  const int n = static_cast<int>(g.rows());
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) throw Singular("matrix is not invertible");

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // positive-diagonal normalisation makes the factors unique
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) {
      r.row(i) = -r.row(i);
      q.col(i) = -q.col(i);
    }

  GroupFactors f;
  f.kind = SplitKind::QR;
  f.g_plus = std::move(q);
  f.g_minus = r.inverse();
  f.residual = (g - f.g_plus * r).norm();
  return f;
}

GroupFactors factor_ldu(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols()) throw DimensionMismatch("factor_ldu needs a square matrix");
  const int n = static_cast<int>(g.rows());

  // Doolittle elimination from the bottom-right corner: g = U D L with U unit
  // upper, D diagonal, L unit lower. Equivalent to the standard LDU of JgJ.
  Eigen::MatrixXd a = g.reverse();  // both rows and columns flipped
  Eigen::MatrixXd lo = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd up = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) up(i, j) = a(i, j) - lo.row(i).head(i).dot(up.col(j).head(i));
    const double pivot = up(i, i);
    if (!(pivot > 0.0) || !std::isfinite(pivot))
      throw OutsideFactorisationDomain("non-positive pivot; input is outside the "
                                       "near-identity factorisation domain");
    for (int j = i + 1; j < n; ++j)
      lo(j, i) = (a(j, i) - lo.row(j).head(i).dot(up.col(i).head(i))) / pivot;
  }
  const Eigen::VectorXd d = up.diagonal();
  Eigen::MatrixXd u_unit = up;
  for (int i = 0; i < n; ++i) u_unit.row(i) /= d[i];

  // map the flipped factors back: g = w_plus * D * w_minus_inv
  const Eigen::MatrixXd w_plus = lo.reverse();
  const Eigen::MatrixXd w_minus_inv = u_unit.reverse();
  const Eigen::VectorXd diag = d.reverse();

  Eigen::VectorXd y = diag.cwiseSqrt();
  GroupFactors f;
  f.kind = SplitKind::LDU;
  f.g_plus = w_plus * y.asDiagonal();
  f.g_minus = w_minus_inv.inverse() * y.cwiseInverse().asDiagonal();
  f.residual = (g - f.g_plus * f.g_minus.inverse()).norm();
  return f;
}

PropagationResult propagate(const AlgebraElement& lambda, const PolynomialObservable& h,
                            double t, SplitKind kind) {
  const Eigen::MatrixXd x = h.gradient(lambda).matrix();
  const Eigen::MatrixXd g = expm(x, t);
  GroupFactors f = (kind == SplitKind::QR) ? factor_qr(g) : factor_ldu(g);

  const Eigen::MatrixXd lam = lambda.matrix();
  const Eigen::MatrixXd via_plus = f.g_plus.inverse() * lam * f.g_plus;
  const Eigen::MatrixXd via_minus = f.g_minus.inverse() * lam * f.g_minus;

  PropagationResult out{lambda.algebra()->element_from_matrix(via_plus),
                        (via_plus - via_minus).norm(), std::move(f)};
  return out;
}

}  // namespace rmatrix
