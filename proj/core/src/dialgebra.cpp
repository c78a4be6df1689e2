#include "rmatrix/dialgebra.hpp"

#include <algorithm>
#include <cmath>

namespace rmatrix {

REndomorphism::REndomorphism(AlgebraPtr algebra, Eigen::MatrixXd matrix,
                             std::optional<Split> split)
    : m_algebra(std::move(algebra)), m_matrix(std::move(matrix)), m_split(std::move(split)) {
  if (m_matrix.rows() != m_algebra->dim() || m_matrix.cols() != m_algebra->dim())
    throw DimensionMismatch("R matrix must act on the coefficient space");
}

AlgebraElement REndomorphism::apply(const AlgebraElement& x) const {
  if (x.algebra() != m_algebra) throw AlgebraMismatch("element not on R's algebra");
  return AlgebraElement(m_algebra, m_matrix * x.coeffs());
}

Eigen::MatrixXd REndomorphism::half_shifted(double sign) const {
  const int n = m_algebra->dim();
  return 0.5 * (m_matrix + sign * Eigen::MatrixXd::Identity(n, n));
}

REndomorphism r_from_split(const AlgebraPtr& algebra, std::vector<int> plus,
                           std::vector<int> minus, const Tolerances& tol) {
  const int n = algebra->dim();
  std::vector<int> seen(n, 0);
  for (int i : plus) {
    if (i < 0 || i >= n) throw NotComplementary("split index out of range");
    ++seen[i];
  }
  for (int i : minus) {
    if (i < 0 || i >= n) throw NotComplementary("split index out of range");
    ++seen[i];
  }
  for (int i = 0; i < n; ++i)
    if (seen[i] != 1) throw NotComplementary("index sets must partition the basis");

  auto check_closed = [&](const std::vector<int>& idx, const char* label) {
    std::vector<bool> inside(n, false);
    for (int i : idx) inside[i] = true;
    for (int i : idx)
      for (int j : idx) {
        Eigen::VectorXd ei = Eigen::VectorXd::Zero(n), ej = Eigen::VectorXd::Zero(n);
        ei[i] = 1.0;
        ej[j] = 1.0;
        const Eigen::VectorXd z = algebra->bracket_coeffs(ei, ej);
        for (int k = 0; k < n; ++k)
          if (!inside[k] && std::abs(z[k]) > tol.closure)
            throw NotSubalgebra(std::string(label) + " span is not closed under the bracket");
      }
  };
  check_closed(plus, "plus");
  check_closed(minus, "minus");

  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (int i : plus) r(i, i) = 1.0;
  for (int i : minus) r(i, i) = -1.0;
  return REndomorphism(algebra, std::move(r), Split{std::move(plus), std::move(minus)});
}

AlgebraElement bracket_r(const REndomorphism& r, const AlgebraElement& x,
                         const AlgebraElement& y) {
  require_same_algebra(x, y);
  return (bracket(r.apply(x), y) + bracket(x, r.apply(y))) * 0.5;
}

namespace {

// B(X,Y) = [RX, RY] - R([RX, Y] + [X, RY]) on coefficient vectors
Eigen::VectorXd b_bar(const REndomorphism& r, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& y) {
  const auto& alg = *r.algebra();
  const Eigen::VectorXd rx = r.matrix() * x;
  const Eigen::VectorXd ry = r.matrix() * y;
  return alg.bracket_coeffs(rx, ry) -
         r.matrix() * (alg.bracket_coeffs(rx, y) + alg.bracket_coeffs(x, ry));
}

}  // namespace

MCYBEReport mcybe_residual(const REndomorphism& r, double c) {
  const auto& alg = *r.algebra();
  const int n = alg.dim();
  MCYBEReport report;
  report.c = c;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd ei = Eigen::VectorXd::Zero(n);
    ei[i] = 1.0;
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd ej = Eigen::VectorXd::Zero(n);
      ej[j] = 1.0;
      const Eigen::VectorXd res = b_bar(r, ei, ej) + c * alg.bracket_coeffs(ei, ej);
      const double norm = alg.materialise(res).norm();
      if (norm > report.max_residual) {
        report.max_residual = norm;
        report.worst_pair = {i, j};
      }
    }
  }
  return report;
}

double jacobi_residual_r(const REndomorphism& r) {
  const auto& alg = *r.algebra();
  const int n = alg.dim();
  std::vector<Eigen::VectorXd> unit(n, Eigen::VectorXd::Zero(n));
  for (int i = 0; i < n; ++i) unit[i][i] = 1.0;

  // cache B(e_i, e_j)
  std::vector<std::vector<Eigen::VectorXd>> b(n, std::vector<Eigen::VectorXd>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = b_bar(r, unit[i], unit[j]);

  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd cyc = alg.bracket_coeffs(b[i][j], unit[k]) +
                                    alg.bracket_coeffs(b[k][i], unit[j]) +
                                    alg.bracket_coeffs(b[j][k], unit[i]);
        worst = std::max(worst, alg.materialise(cyc).norm());
      }
  return worst;
}

double lie_poisson_r(const REndomorphism& r, const PolynomialObservable& phi,
                     const PolynomialObservable& psi, const AlgebraElement& l) {
  return pairing(l, bracket_r(r, phi.gradient(l), psi.gradient(l)));
}

AlgebraElement m_matrix(const REndomorphism& r, const PolynomialObservable& h,
                        const AlgebraElement& l, Side side) {
  const AlgebraElement grad = h.gradient(l);
  switch (side) {
    case Side::Symmetric:
      return r.apply(grad) * 0.5;
    case Side::Plus:
      return AlgebraElement(l.algebra(), r.half_shifted(+1.0) * grad.coeffs());
    case Side::Minus:
      return AlgebraElement(l.algebra(), r.half_shifted(-1.0) * grad.coeffs());
  }
  throw Error("unreachable");
}

double skew_adjoint_residual(const REndomorphism& r) {
  const auto& alg = *r.algebra();
  if (!alg.gram_invertible())
    throw DegeneratePairing("adjoint needs a non-degenerate trace form");
  const Eigen::MatrixXd g = alg.gram();
  const Eigen::MatrixXd r_star = g.fullPivLu().solve(r.matrix().transpose() * g);
  return (r_star + r.matrix()).norm();
}

bool is_skew_adjoint(const REndomorphism& r, double tol) {
  return skew_adjoint_residual(r) <= tol * (1.0 + r.matrix().norm());
}

REndomorphism DialgebraDouble::r_double() const {
  return REndomorphism(ambient, p_gr.matrix() - p_delta.matrix());
}

Eigen::VectorXd DialgebraDouble::embed(const AlgebraElement& x, const AlgebraElement& y) const {
  const int n = base->dim();
  Eigen::VectorXd v(2 * n);
  v.head(n) = x.coeffs();
  v.tail(n) = y.coeffs();
  return v;
}

DialgebraDouble build_double(const AlgebraPtr& algebra, const REndomorphism& r) {
  const auto report = mcybe_residual(r, 1.0);
  if (report.max_residual > 1e-8)
    throw NotMCYBE("R fails the mCYBE with c = 1 (residual " +
                   std::to_string(report.max_residual) + ")");

  const int n = algebra->dim();
  const int m = algebra->matrix_size();

  // ambient algebra on block-diagonal pairs
  std::vector<Eigen::MatrixXd> basis;
  basis.reserve(2 * n);
  for (int half = 0; half < 2; ++half)
    for (int i = 0; i < n; ++i) {
      Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * m, 2 * m);
      b.block(half * m, half * m, m, m) = algebra->basis()[i];
      basis.push_back(std::move(b));
    }
  AlgebraPtr ambient = LieAlgebra::build(algebra->name() + " (+) " + algebra->name(),
                                         std::move(basis));

  const Eigen::MatrixXd rp = r.half_shifted(+1.0);
  const Eigen::MatrixXd rm = r.half_shifted(-1.0);

  // P_gR (X,Y) = (X+ - Y+, X- - Y-),  P_delta (X,Y) = (Y+ - X-, Y+ - X-)
  Eigen::MatrixXd p_gr = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  p_gr.block(0, 0, n, n) = rp;
  p_gr.block(0, n, n, n) = -rp;
  p_gr.block(n, 0, n, n) = rm;
  p_gr.block(n, n, n, n) = -rm;

  Eigen::MatrixXd p_delta = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  p_delta.block(0, 0, n, n) = -rm;
  p_delta.block(0, n, n, n) = rp;
  p_delta.block(n, 0, n, n) = -rm;
  p_delta.block(n, n, n, n) = rp;

  return DialgebraDouble{algebra, ambient, REndomorphism(ambient, std::move(p_gr)),
                         REndomorphism(ambient, std::move(p_delta))};
}

}  // namespace rmatrix
