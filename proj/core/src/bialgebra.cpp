#include "rmatrix/bialgebra.hpp"

#include <algorithm>
#include <cmath>

namespace rmatrix {

DualElement::DualElement(AlgebraPtr algebra, Eigen::VectorXd coeffs)
    : m_algebra(std::move(algebra)), m_coeffs(std::move(coeffs)) {
  if (m_coeffs.size() != m_algebra->dim())
    throw DimensionMismatch("dual coefficient length does not match algebra dimension");
}

DualElement DualElement::operator+(const DualElement& other) const {
  if (m_algebra != other.m_algebra) throw AlgebraMismatch("dual elements on different algebras");
  return DualElement(m_algebra, m_coeffs + other.m_coeffs);
}

DualElement DualElement::operator-(const DualElement& other) const {
  if (m_algebra != other.m_algebra) throw AlgebraMismatch("dual elements on different algebras");
  return DualElement(m_algebra, m_coeffs - other.m_coeffs);
}

DualElement DualElement::operator*(double scalar) const {
  return DualElement(m_algebra, m_coeffs * scalar);
}

double DualElement::pair(const AlgebraElement& x) const {
  if (m_algebra != x.algebra()) throw AlgebraMismatch("pairing across algebras");
  return m_coeffs.dot(x.coeffs());
}

DualElement trace_dual(const AlgebraElement& x) {
  return DualElement(x.algebra(), x.algebra()->gram() * x.coeffs());
}

AlgebraElement element_from_dual(const DualElement& xi) {
  return AlgebraElement(xi.algebra(), xi.algebra()->solve_gram(xi.coeffs()));
}

DualElement coadjoint_dual(const AlgebraElement& x, const DualElement& xi) {
  if (x.algebra() != xi.algebra()) throw AlgebraMismatch("coadjoint across algebras");
  const Eigen::MatrixXd ad = x.algebra()->adjoint_matrix(x.coeffs());
  return DualElement(x.algebra(), -ad.transpose() * xi.coeffs());
}

TensorR::TensorR(AlgebraPtr algebra, Eigen::MatrixXd coeffs)
    : m_algebra(std::move(algebra)), m_coeffs(std::move(coeffs)) {
  if (m_coeffs.rows() != m_algebra->dim() || m_coeffs.cols() != m_algebra->dim())
    throw DimensionMismatch("tensor coefficients must be dim x dim");
}

double ThreeTensor::max_abs() const {
  double worst = 0.0;
  for (double v : m_data) worst = std::max(worst, std::abs(v));
  return worst;
}

double ThreeTensor::antisymmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < m_dim; ++i)
    for (int j = 0; j < m_dim; ++j)
      for (int k = 0; k < m_dim; ++k) {
        worst = std::max(worst, std::abs(at(i, j, k) + at(j, i, k)));
        worst = std::max(worst, std::abs(at(i, j, k) + at(i, k, j)));
      }
  return worst;
}

ThreeTensor ThreeTensor::operator-(const ThreeTensor& other) const {
  ThreeTensor out(m_dim);
  for (size_t i = 0; i < m_data.size(); ++i) out.m_data[i] = m_data[i] - other.m_data[i];
  return out;
}

ThreeTensor ThreeTensor::operator+(const ThreeTensor& other) const {
  ThreeTensor out(m_dim);
  for (size_t i = 0; i < m_data.size(); ++i) out.m_data[i] = m_data[i] + other.m_data[i];
  return out;
}

ThreeTensor ThreeTensor::operator*(double scalar) const {
  ThreeTensor out(m_dim);
  for (size_t i = 0; i < m_data.size(); ++i) out.m_data[i] = m_data[i] * scalar;
  return out;
}

AlgebraElement rbar(const TensorR& r, const DualElement& xi) {
  if (r.algebra() != xi.algebra()) throw AlgebraMismatch("rbar across algebras");
  return AlgebraElement(r.algebra(), r.coeffs().transpose() * xi.coeffs());
}

Eigen::MatrixXd ad2(const LieAlgebra& algebra, const Eigen::VectorXd& x,
                    const Eigen::MatrixXd& u) {
  const Eigen::MatrixXd ad = algebra.adjoint_matrix(x);
  return ad * u + u * ad.transpose();
}

Eigen::MatrixXd coboundary(const TensorR& r, const AlgebraElement& x) {
  if (r.algebra() != x.algebra()) throw AlgebraMismatch("coboundary across algebras");
  return ad2(*r.algebra(), x.coeffs(), r.coeffs());
}

double sym_invariance_residual(const TensorR& r) {
  const auto& alg = *r.algebra();
  const Eigen::MatrixXd s = r.sym_part();
  double worst = 0.0;
  for (int k = 0; k < alg.dim(); ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(alg.dim());
    e[k] = 1.0;
    worst = std::max(worst, ad2(alg, e, s).norm());
  }
  return worst;
}

namespace {

void require_sym_invariant(const TensorR& r) {
  const double res = sym_invariance_residual(r);
  if (res > 1e-8)
    throw SymPartNotInvariant("symmetric part is not ad-invariant (residual " +
                              std::to_string(res) + ")");
}

Eigen::VectorXd bracket_star_coeffs(const LieAlgebra& alg, const Eigen::MatrixXd& skew,
                                    const Eigen::VectorXd& xi, const Eigen::VectorXd& eta) {
  const Eigen::VectorXd axi = skew.transpose() * xi;
  const Eigen::VectorXd aeta = skew.transpose() * eta;
  return -alg.adjoint_matrix(axi).transpose() * eta +
         alg.adjoint_matrix(aeta).transpose() * xi;
}

}  // namespace

DualElement bracket_star(const TensorR& r, const DualElement& xi, const DualElement& eta) {
  if (r.algebra() != xi.algebra() || r.algebra() != eta.algebra())
    throw AlgebraMismatch("bracket_star across algebras");
  require_sym_invariant(r);
  return DualElement(r.algebra(), bracket_star_coeffs(*r.algebra(), r.skew_part(),
                                                      xi.coeffs(), eta.coeffs()));
}

double dual_jacobi_residual(const TensorR& r) {
  require_sym_invariant(r);
  const auto& alg = *r.algebra();
  const Eigen::MatrixXd a = r.skew_part();
  const int n = alg.dim();
  std::vector<Eigen::VectorXd> unit(n, Eigen::VectorXd::Zero(n));
  for (int i = 0; i < n; ++i) unit[i][i] = 1.0;

  std::vector<std::vector<Eigen::VectorXd>> br(n, std::vector<Eigen::VectorXd>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) br[i][j] = bracket_star_coeffs(alg, a, unit[i], unit[j]);

  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd cyc = bracket_star_coeffs(alg, a, br[i][j], unit[k]) +
                                    bracket_star_coeffs(alg, a, br[j][k], unit[i]) +
                                    bracket_star_coeffs(alg, a, br[k][i], unit[j]);
        worst = std::max(worst, cyc.cwiseAbs().maxCoeff());
      }
  return worst;
}

ThreeTensor schouten(const TensorR& a) {
  if ((a.coeffs() + a.coeffs().transpose()).norm() > 1e-12 * (1.0 + a.coeffs().norm()))
    throw NotAntisymmetric("Schouten bracket needs a skew tensor");
  const auto& alg = *a.algebra();
  const int n = alg.dim();
  const Eigen::MatrixXd abar = a.coeffs().transpose();

  std::vector<Eigen::VectorXd> mapped(n);
  for (int i = 0; i < n; ++i) mapped[i] = abar.col(i);  // abar * e^i

  ThreeTensor t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd bij = alg.bracket_coeffs(mapped[i], mapped[j]);
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd bjk = alg.bracket_coeffs(mapped[j], mapped[k]);
        const Eigen::VectorXd bki = alg.bracket_coeffs(mapped[k], mapped[i]);
        t.at(i, j, k) = -2.0 * (bij[k] + bjk[i] + bki[j]);
      }
    }
  return t;
}

ThreeTensor rr_bracket(const TensorR& r) {
  require_sym_invariant(r);
  const auto& alg = *r.algebra();
  const int n = alg.dim();
  const Eigen::MatrixXd rt = r.coeffs().transpose();
  const Eigen::MatrixXd a = r.skew_part();
  std::vector<Eigen::VectorXd> unit(n, Eigen::VectorXd::Zero(n));
  for (int i = 0; i < n; ++i) unit[i][i] = 1.0;

  ThreeTensor t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd lhs = alg.bracket_coeffs(rt.col(i), rt.col(j));
      const Eigen::VectorXd rhs = rt * bracket_star_coeffs(alg, a, unit[i], unit[j]);
      for (int k = 0; k < n; ++k) t.at(i, j, k) = lhs[k] - rhs[k];
    }
  return t;
}

ThreeTensor cybe_tensor(const TensorR& r) {
  const auto& alg = *r.algebra();
  const int n = alg.dim();
  const auto& c = alg.structure();
  const Eigen::MatrixXd& rm = r.coeffs();

  ThreeTensor t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // [r12,r13]: c^i_{ac} r^{aj} r^{ck}
        double v = rm.col(j).dot(c[i] * rm.col(k));
        // [r12,r23]: c^j_{bc} r^{ib} r^{ck}
        v += rm.row(i).dot(c[j] * rm.col(k));
        // [r13,r23]: c^k_{bd} r^{ib} r^{jd}
        v += rm.row(i).dot(c[k] * rm.row(j).transpose());
        t.at(i, j, k) = v;
      }
  return t;
}

namespace {

Eigen::MatrixXd kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::MatrixXd tensor_poisson_bracket(const TensorR& r, const Eigen::MatrixXd& l) {
  const auto& alg = *r.algebra();
  const int m = alg.matrix_size();
  if (l.rows() != m || l.cols() != m)
    throw DimensionMismatch("matrix argument must match the defining representation");

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(m * m, m * m);
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j) {
      if (r.coeffs()(i, j) == 0.0) continue;
      rho += r.coeffs()(i, j) * kronecker(alg.basis()[i], alg.basis()[j]);
    }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd lift = kronecker(l, id) + kronecker(id, l);
  return lift * rho - rho * lift;
}

double cocycle_condition_residual(const TensorR& r) {
  const auto& alg = *r.algebra();
  const int n = alg.dim();
  std::vector<Eigen::VectorXd> unit(n, Eigen::VectorXd::Zero(n));
  for (int i = 0; i < n; ++i) unit[i][i] = 1.0;

  std::vector<Eigen::MatrixXd> gamma(n);
  for (int i = 0; i < n; ++i) gamma[i] = ad2(alg, unit[i], r.coeffs());

  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd bij = alg.bracket_coeffs(unit[i], unit[j]);
      Eigen::MatrixXd gamma_bij = Eigen::MatrixXd::Zero(n, n);
      for (int k = 0; k < n; ++k) gamma_bij += bij[k] * gamma[k];
      const Eigen::MatrixXd res =
          ad2(alg, unit[i], gamma[j]) - ad2(alg, unit[j], gamma[i]) - gamma_bij;
      worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
  return worst;
}

REndomorphism to_r_endomorphism(const TensorR& r) {
  require_sym_invariant(r);
  const Eigen::MatrixXd s = r.sym_part();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
  const double smin = svd.singularValues().tail(1)(0);
  const double smax = svd.singularValues()(0);
  if (smax == 0.0 || smin < 1e-12 * smax)
    throw SingularSymmetricPart("symmetric part of r is not invertible");
  // abar o sbar^-1 on coefficient columns: abar = a^T, sbar = s
  const Eigen::MatrixXd rmat = r.skew_part().transpose() * s.fullPivLu().inverse();
  return REndomorphism(r.algebra(), rmat);
}

const char* to_string(RClass c) {
  switch (c) {
    case RClass::Triangular: return "triangular";
    case RClass::QuasiTriangular: return "quasi-triangular";
    case RClass::Factorisable: return "factorisable";
    case RClass::None: return "none";
  }
  return "none";
}

BialgebraReport classify(const TensorR& r, const Tolerances& tol) {
  BialgebraReport rep;
  rep.sym_invariance = sym_invariance_residual(r);
  const Eigen::MatrixXd s = r.sym_part();
  rep.sym_part_norm = s.norm();
  if (s.norm() > 0) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
    rep.sym_min_singular = svd.singularValues().tail(1)(0);
  }
  rep.schouten_norm = schouten(r.skew()).max_abs();

  const double scale = 1.0 + r.coeffs().norm();
  if (rep.sym_invariance > 1e-8 * scale) {
    rep.classification = RClass::None;
    return rep;
  }
  rep.rr_norm = rr_bracket(r).max_abs();
  if (rep.rr_norm > tol.closure * scale) {
    rep.classification = RClass::None;
  } else if (rep.sym_part_norm <= tol.identity * scale) {
    rep.classification = RClass::Triangular;
  } else if (rep.sym_min_singular > 1e-10 * scale) {
    rep.classification = RClass::Factorisable;
  } else {
    rep.classification = RClass::QuasiTriangular;
  }
  return rep;
}

BialgebraDouble::BialgebraDouble(TensorR r) : m_r(std::move(r)) {}

DoubleElement BialgebraDouble::bracket(const DoubleElement& u, const DoubleElement& v) const {
  const auto& alg = *m_r.algebra();
  const Eigen::MatrixXd a = m_r.skew_part();
  const int n = alg.dim();

  const Eigen::VectorXd& x = u.g_part;
  const Eigen::VectorXd& xi = u.dual_part;
  const Eigen::VectorXd& y = v.g_part;
  const Eigen::VectorXd& eta = v.dual_part;

  // ad*_xi Y in g: <eta', ad*_xi Y> = -<[xi, eta']_r, Y>
  auto coad_by_dual = [&](const Eigen::VectorXd& zeta, const Eigen::VectorXd& w) {
    Eigen::VectorXd out(n);
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd ej = Eigen::VectorXd::Zero(n);
      ej[j] = 1.0;
      out[j] = -bracket_star_coeffs(alg, a, zeta, ej).dot(w);
    }
    return out;
  };
  auto coad_by_elem = [&](const Eigen::VectorXd& w, const Eigen::VectorXd& zeta) {
    return (-alg.adjoint_matrix(w).transpose() * zeta).eval();
  };

  DoubleElement out;
  out.g_part = alg.bracket_coeffs(x, y) + coad_by_dual(xi, y) - coad_by_dual(eta, x);
  out.dual_part =
      bracket_star_coeffs(alg, a, xi, eta) + coad_by_elem(x, eta) - coad_by_elem(y, xi);
  return out;
}

double BialgebraDouble::product(const DoubleElement& u, const DoubleElement& v) const {
  return u.dual_part.dot(v.g_part) + v.dual_part.dot(u.g_part);
}

DoubleElement BialgebraDouble::basis_element(int i) const {
  const int n = m_r.algebra()->dim();
  DoubleElement e{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  if (i < n)
    e.g_part[i] = 1.0;
  else
    e.dual_part[i - n] = 1.0;
  return e;
}

double BialgebraDouble::invariance_residual() const {
  const int d = dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    const DoubleElement ei = basis_element(i);
    for (int j = 0; j < d; ++j) {
      const DoubleElement ej = basis_element(j);
      const DoubleElement bij = bracket(ei, ej);
      for (int k = 0; k < d; ++k) {
        const DoubleElement ek = basis_element(k);
        const double val = product(bij, ek) + product(ej, bracket(ei, ek));
        worst = std::max(worst, std::abs(val));
      }
    }
  }
  return worst;
}

BialgebraDouble build_bialgebra_double(const TensorR& r) {
  const double jac = dual_jacobi_residual(r);
  if (jac > 1e-8)
    throw DualJacobiFails("dual bracket fails Jacobi (residual " + std::to_string(jac) + ")");
  return BialgebraDouble(r);
}

}  // namespace rmatrix
