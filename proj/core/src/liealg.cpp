#include "rmatrix/liealg.hpp"

#include <cmath>
#include <sstream>

namespace rmatrix {

namespace {

Eigen::VectorXd vectorise(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

}  // namespace

std::shared_ptr<const LieAlgebra> LieAlgebra::build(std::string name,
                                                    std::vector<Eigen::MatrixXd> basis,
                                                    const Tolerances& tol) {
  if (basis.empty()) throw DependentBasis("empty basis");
  const int m = static_cast<int>(basis.front().rows());
  for (const auto& b : basis) {
    if (b.rows() != m || b.cols() != m)
      throw DependentBasis("basis matrices must be square and of equal size");
  }
  const int n = static_cast<int>(basis.size());

  auto alg = std::shared_ptr<LieAlgebra>(new LieAlgebra());
  alg->m_name = std::move(name);
  alg->m_basis = std::move(basis);

  alg->m_vectorised.resize(m * m, n);
  for (int i = 0; i < n; ++i) alg->m_vectorised.col(i) = vectorise(alg->m_basis[i]);
  alg->m_vec_solver.compute(alg->m_vectorised);
  if (alg->m_vec_solver.rank() < n)
    throw DependentBasis("basis matrices are linearly dependent");

  // scale for relative closure tests
  double scale = 0.0;
  for (const auto& b : alg->m_basis) scale = std::max(scale, b.norm());

  alg->m_structure.assign(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const Eigen::MatrixXd comm =
          alg->m_basis[i] * alg->m_basis[j] - alg->m_basis[j] * alg->m_basis[i];
      const Projection p = alg->project(comm);
      if (p.defect > tol.closure * (1.0 + scale * scale)) {
        std::ostringstream msg;
        msg << "commutator [e_" << i << ", e_" << j << "] leaves the span (defect "
            << p.defect << ")";
        throw NotClosed(msg.str());
      }
      for (int k = 0; k < n; ++k) {
        alg->m_structure[k](i, j) = p.coeffs[k];
        alg->m_structure[k](j, i) = -p.coeffs[k];
      }
    }
  }

  alg->m_gram.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      alg->m_gram(i, j) = alg->m_gram(j, i) = (alg->m_basis[i] * alg->m_basis[j]).trace();
  alg->m_gram_solver.compute(alg->m_gram);
  alg->m_gram_invertible = alg->m_gram_solver.isInvertible();

  return alg;
}

Eigen::MatrixXd LieAlgebra::materialise(const Eigen::VectorXd& coeffs) const {
  const int m = matrix_size();
  Eigen::VectorXd v = m_vectorised * coeffs;
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), m, m);
}

LieAlgebra::Projection LieAlgebra::project(const Eigen::MatrixXd& mat) const {
  if (mat.rows() != matrix_size() || mat.cols() != matrix_size())
    throw DimensionMismatch("matrix size does not match the algebra representation");
  Projection p;
  p.coeffs = m_vec_solver.solve(vectorise(mat));
  p.defect = (m_vectorised * p.coeffs - vectorise(mat)).norm();
  return p;
}

Eigen::MatrixXd LieAlgebra::adjoint_matrix(const Eigen::VectorXd& x) const {
  const int n = dim();
  Eigen::MatrixXd ad(n, n);
  for (int i = 0; i < n; ++i) ad.row(i) = x.transpose() * m_structure[i];
  return ad;
}

Eigen::VectorXd LieAlgebra::bracket_coeffs(const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& y) const {
  const int n = dim();
  Eigen::VectorXd z(n);
  for (int k = 0; k < n; ++k) z[k] = x.dot(m_structure[k] * y);
  return z;
}

Eigen::VectorXd LieAlgebra::solve_gram(const Eigen::VectorXd& rhs) const {
  if (!m_gram_invertible)
    throw DegeneratePairing("trace form is degenerate on algebra '" + m_name + "'");
  return m_gram_solver.solve(rhs);
}

double LieAlgebra::jacobi_residual() const {
  const int n = dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m)
            acc += m_structure[m](i, j) * m_structure[l](m, k) +
                   m_structure[m](j, k) * m_structure[l](m, i) +
                   m_structure[m](k, i) * m_structure[l](m, j);
          worst = std::max(worst, std::abs(acc));
        }
  return worst;
}

AlgebraElement LieAlgebra::element(Eigen::VectorXd coeffs) const {
  return AlgebraElement(shared_from_this(), std::move(coeffs));
}

AlgebraElement LieAlgebra::element_from_matrix(const Eigen::MatrixXd& mat) const {
  return element(project(mat).coeffs);
}

AlgebraElement LieAlgebra::basis_element(int i) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(dim());
  c[i] = 1.0;
  return element(std::move(c));
}

AlgebraElement LieAlgebra::zero() const { return element(Eigen::VectorXd::Zero(dim())); }

AlgebraElement::AlgebraElement(AlgebraPtr algebra, Eigen::VectorXd coeffs)
    : m_algebra(std::move(algebra)), m_coeffs(std::move(coeffs)) {
  if (m_coeffs.size() != m_algebra->dim())
    throw DimensionMismatch("coefficient vector length does not match algebra dimension");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
  require_same_algebra(*this, other);
  return AlgebraElement(m_algebra, m_coeffs + other.m_coeffs);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& other) const {
  require_same_algebra(*this, other);
  return AlgebraElement(m_algebra, m_coeffs - other.m_coeffs);
}

AlgebraElement AlgebraElement::operator*(double scalar) const {
  return AlgebraElement(m_algebra, m_coeffs * scalar);
}

void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.algebra() != y.algebra())
    throw AlgebraMismatch("elements belong to different algebras");
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  return AlgebraElement(x.algebra(), x.algebra()->bracket_coeffs(x.coeffs(), y.coeffs()));
}

double pairing(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  return x.coeffs().dot(x.algebra()->gram() * y.coeffs());
}

AlgebraElement coadjoint(const AlgebraElement& x, const AlgebraElement& l) {
  require_same_algebra(x, l);
  const auto& alg = x.algebra();
  // <L'|e_j> = -<L|[X, e_j]>  componentwise, then pull back through the Gram matrix
  const int n = alg->dim();
  Eigen::VectorXd rhs(n);
  const Eigen::VectorXd gl = alg->gram() * l.coeffs();
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd xe(n);
    for (int k = 0; k < n; ++k) xe[k] = x.coeffs().dot(alg->structure()[k].col(j));
    rhs[j] = -gl.dot(xe);
  }
  return AlgebraElement(alg, alg->solve_gram(rhs));
}

PolynomialObservable PolynomialObservable::trace_power(int ell, double scale) {
  if (ell < 1) throw BadSize("trace-power observables need l >= 1");
  PolynomialObservable obs;
  obs.m_kind = Kind::TracePower;
  obs.m_ell = ell;
  obs.m_scale = scale;
  return obs;
}

PolynomialObservable PolynomialObservable::linear(AlgebraElement direction) {
  PolynomialObservable obs;
  obs.m_kind = Kind::Linear;
  obs.m_direction = std::make_shared<AlgebraElement>(std::move(direction));
  return obs;
}

double PolynomialObservable::evaluate(const AlgebraElement& l) const {
  if (m_kind == Kind::Linear) return pairing(l, *m_direction);
  Eigen::MatrixXd p = l.matrix();
  Eigen::MatrixXd acc = p;
  for (int i = 1; i <= m_ell; ++i) acc = acc * p;
  return m_scale * acc.trace() / static_cast<double>(m_ell + 1);
}

AlgebraElement PolynomialObservable::gradient(const AlgebraElement& l) const {
  if (m_kind == Kind::Linear) {
    require_same_algebra(l, *m_direction);
    return *m_direction;
  }
  const auto& alg = l.algebra();
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(alg->matrix_size(), alg->matrix_size());
  const Eigen::MatrixXd lm = l.matrix();
  for (int i = 0; i < m_ell; ++i) p = p * lm;
  const auto proj = alg->project(m_scale * p);
  // the projection must not lose pairing information against the basis
  const Eigen::MatrixXd rec = alg->materialise(proj.coeffs);
  for (int j = 0; j < alg->dim(); ++j) {
    const double gap = ((m_scale * p - rec) * alg->basis()[j]).trace();
    if (std::abs(gap) > 1e-8 * (1.0 + p.norm()))
      throw ProjectionLoss("gradient projection changes trace pairings");
  }
  return AlgebraElement(alg, proj.coeffs);
}

double PolynomialObservable::gradient_defect(const AlgebraElement& l) const {
  if (m_kind == Kind::Linear) return 0.0;
  const auto& alg = l.algebra();
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(alg->matrix_size(), alg->matrix_size());
  const Eigen::MatrixXd lm = l.matrix();
  for (int i = 0; i < m_ell; ++i) p = p * lm;
  return alg->project(m_scale * p).defect;
}

double lie_poisson(const PolynomialObservable& phi, const PolynomialObservable& psi,
                   const AlgebraElement& l) {
  return pairing(l, bracket(phi.gradient(l), psi.gradient(l)));
}

// ---------------------------------------------------------------------------
// Stock algebras
// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXd unit_matrix(int m, int i, int j) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

AlgebraPtr make_sl(int m) {
  std::vector<Eigen::MatrixXd> basis;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) basis.push_back(unit_matrix(m, i, j));
  for (int i = 0; i + 1 < m; ++i)
    basis.push_back(unit_matrix(m, i, i) - unit_matrix(m, i + 1, i + 1));
  return LieAlgebra::build("sl(" + std::to_string(m) + ")", std::move(basis));
}

AlgebraPtr make_gl(int m) {
  std::vector<Eigen::MatrixXd> basis;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) basis.push_back(unit_matrix(m, i, j));
  return LieAlgebra::build("gl(" + std::to_string(m) + ")", std::move(basis));
}

SplitAlgebra make_sl_skew_upper(int m) {
  std::vector<Eigen::MatrixXd> basis;
  SplitAlgebra out;
  int idx = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      basis.push_back(unit_matrix(m, i, j) - unit_matrix(m, j, i));
      out.plus_indices.push_back(idx++);
    }
  for (int i = 0; i + 1 < m; ++i) {
    basis.push_back(unit_matrix(m, i, i) - unit_matrix(m, i + 1, i + 1));
    out.minus_indices.push_back(idx++);
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      basis.push_back(unit_matrix(m, i, j));
      out.minus_indices.push_back(idx++);
    }
  out.algebra =
      LieAlgebra::build("sl(" + std::to_string(m) + ")/skew-upper", std::move(basis));
  return out;
}

SplitAlgebra make_gl_triangular(int m) {
  std::vector<Eigen::MatrixXd> basis;
  SplitAlgebra out;
  int idx = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      basis.push_back(unit_matrix(m, i, j));
      out.plus_indices.push_back(idx++);
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j) {
      basis.push_back(unit_matrix(m, i, j));
      out.minus_indices.push_back(idx++);
    }
  out.algebra =
      LieAlgebra::build("gl(" + std::to_string(m) + ")/triangular", std::move(basis));
  return out;
}

AlgebraPtr make_solvable_2d() {
  std::vector<Eigen::MatrixXd> basis;
  basis.push_back(unit_matrix(2, 0, 1));
  basis.push_back(-unit_matrix(2, 0, 0));
  return LieAlgebra::build("solv(2)", std::move(basis));
}

}  // namespace rmatrix
