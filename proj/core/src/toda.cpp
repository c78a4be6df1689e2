#include "rmatrix/toda.hpp"

#include <cmath>

namespace rmatrix {

Eigen::MatrixXd lambda_matrix(int n) {
  if (n < 1) throw BadSize("the chain needs at least two sites (N >= 1)");
  const int m = n + 1;
  Eigen::MatrixXd lam = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i + 1 < m; ++i) lam(i, i + 1) = lam(i + 1, i) = 1.0;
  return lam;
}

Eigen::MatrixXd lax_from_flaschka(const TodaChain& chain) {
  if (chain.b.size() + 1 != chain.a.size())
    throw LengthMismatch("need one more diagonal entry than off-diagonal entries");
  const int m = chain.sites();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  l.diagonal() = chain.a;
  for (int i = 0; i + 1 < m; ++i) l(i, i + 1) = l(i + 1, i) = chain.b[i];
  return l;
}

TodaChain chain_from_lax(const Eigen::MatrixXd& l) {
  TodaChain chain;
  chain.a = l.diagonal();
  chain.b.resize(l.rows() - 1);
  for (int i = 0; i + 1 < l.rows(); ++i) chain.b[i] = l(i, i + 1);
  return chain;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> toda_rhs(const TodaChain& chain) {
  const int n = chain.n();
  Eigen::VectorXd da(n + 1), db(n);
  da[0] = 2.0 * chain.b[0] * chain.b[0];
  da[n] = -2.0 * chain.b[n - 1] * chain.b[n - 1];
  for (int j = 1; j < n; ++j)
    da[j] = 2.0 * (chain.b[j] * chain.b[j] - chain.b[j - 1] * chain.b[j - 1]);
  for (int j = 0; j < n; ++j) db[j] = chain.b[j] * (chain.a[j + 1] - chain.a[j]);
  return {da, db};
}

namespace {

int require_sites(int n) {
  if (n < 1) throw BadSize("the chain needs at least two sites (N >= 1)");
  return n;
}

}  // namespace

OpenTodaSystem::OpenTodaSystem(int n)
    : m_n(require_sites(n)),
      m_split(make_sl_skew_upper(n + 1)),
      m_r(r_from_split(m_split.algebra, m_split.plus_indices, m_split.minus_indices)) {}

AlgebraElement OpenTodaSystem::lambda() const {
  return algebra()->element_from_matrix(lambda_matrix(m_n));
}

AlgebraElement OpenTodaSystem::element(const TodaChain& chain) const {
  return algebra()->element_from_matrix(lax_from_flaschka(chain));
}

TodaChain OpenTodaSystem::chain(const AlgebraElement& l) const {
  return chain_from_lax(l.matrix());
}

bool OpenTodaSystem::r_is_skew() const { return is_skew_adjoint(m_r); }

TodaChain cartan_to_flaschka(const CartanCoordinates& coords) {
  const int sites = coords.sites();
  const int n = sites - 1;
  for (int i = 0; i < sites; ++i)
    if (!(coords.eta[i] > 0.0)) throw NonPositiveEta("eta entries must be positive");

  Eigen::VectorXd w(n), z(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 * (coords.omega_plus(i, i + 1) - coords.omega_minus(i + 1, i));
    z[i] = 2.0 * coords.eta[i + 1] / coords.eta[i];
  }

  TodaChain chain;
  chain.a.resize(sites);
  chain.b.resize(n);
  chain.a[0] = 0.5 * w[0] * z[0];
  chain.a[n] = -0.5 * w[n - 1] * z[n - 1];
  for (int i = 1; i < n; ++i) chain.a[i] = 0.5 * (w[i] * z[i] - w[i - 1] * z[i - 1]);
  for (int i = 0; i < n; ++i) chain.b[i] = 0.5 * z[i];
  return chain;
}

namespace {

// strict upper / diagonal / strict lower parts
Eigen::MatrixXd strict_upper(const Eigen::MatrixXd& m) {
  return m.triangularView<Eigen::StrictlyUpper>();
}
Eigen::MatrixXd strict_lower(const Eigen::MatrixXd& m) {
  return m.triangularView<Eigen::StrictlyLower>();
}
Eigen::MatrixXd diagonal_part(const Eigen::MatrixXd& m) {
  return m.diagonal().asDiagonal();
}

}  // namespace

CartanTodaSystem::CartanTodaSystem(int n)
    : m_n(require_sites(n)),
      m_algebra(make_sl(n + 1)),
      m_r(m_algebra, Eigen::MatrixXd::Zero(m_algebra->dim(), m_algebra->dim())) {
  // R = P+ - P- assembled column by column: e_i -> upper part - lower part
  const int dim = m_algebra->dim();
  Eigen::MatrixXd r(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const Eigen::MatrixXd b = m_algebra->basis()[i];
    r.col(i) = m_algebra->project(strict_upper(b) - strict_lower(b)).coeffs;
  }
  m_r = REndomorphism(m_algebra, std::move(r));
}

AlgebraElement CartanTodaSystem::r_action(const AlgebraElement& x, Side side) const {
  if (x.algebra() != m_algebra) throw AlgebraMismatch("element not on the Cartan system");
  if (side == Side::Symmetric) return m_r.apply(x);
  const double sign = (side == Side::Plus) ? 1.0 : -1.0;
  const Eigen::MatrixXd m = x.matrix();
  const Eigen::MatrixXd nil = (side == Side::Plus) ? strict_upper(m) : strict_lower(m);
  return m_algebra->element_from_matrix(sign * (nil + 0.5 * diagonal_part(m)));
}

Eigen::MatrixXd CartanTodaSystem::orbit_matrix(const CartanCoordinates& coords) const {
  const int m = m_n + 1;
  if (coords.sites() != m) throw LengthMismatch("coordinate size does not match the chain");
  for (int i = 0; i < m; ++i)
    if (!(coords.eta[i] > 0.0)) throw NonPositiveEta("eta entries must be positive");

  Eigen::MatrixXd w_plus = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd w_minus = Eigen::MatrixXd::Identity(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      w_plus(i, j) = coords.omega_plus(i, j);
      w_minus(j, i) = coords.omega_minus(j, i);
    }
  const Eigen::VectorXd y = coords.eta;
  const Eigen::MatrixXd lam = lambda_matrix(m_n);

  const Eigen::MatrixXd conj_plus = w_plus * y.asDiagonal() * lam *
                                    y.cwiseInverse().asDiagonal() * w_plus.inverse();
  const Eigen::MatrixXd conj_minus = w_minus * y.cwiseInverse().asDiagonal() * lam *
                                     y.asDiagonal() * w_minus.inverse();

  // R*+ keeps the lower part and half the diagonal; -R*- keeps the upper
  // part and half the diagonal
  return strict_lower(conj_plus) + 0.5 * diagonal_part(conj_plus) +
         strict_upper(conj_minus) + 0.5 * diagonal_part(conj_minus);
}

AlgebraElement CartanTodaSystem::flow_rhs(const AlgebraElement& l) const {
  const PolynomialObservable h = PolynomialObservable::trace_power(1, 2.0);  // tr L^2
  const AlgebraElement m = r_action(h.gradient(l), Side::Plus);
  return bracket(m, l);
}

bool CartanTodaSystem::r_is_skew() const { return is_skew_adjoint(m_r); }

Eigen::MatrixXd bm_lax_matrix(const ShiftLattice& lattice) {
  const int n = lattice.period();
  if (n < 2) throw BadPeriod("the periodic lattice needs period >= 2");
  if (lattice.b.size() != n) throw LengthMismatch("band lengths must match the period");
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    l(i, i) = lattice.b[i];
    l(i, (i + n - 1) % n) += lattice.a[i];  // a_n S^-1
    l(i, (i + 1) % n) += 1.0;               // S
  }
  return l;
}

Eigen::MatrixXd bm_upper_matrix(const ShiftLattice& lattice) {
  const int n = lattice.period();
  if (n < 2) throw BadPeriod("the periodic lattice needs period >= 2");
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    u(i, i) = lattice.b[i];
    u(i, (i + 1) % n) += 1.0;
  }
  return u;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> bm_rhs(const ShiftLattice& lattice) {
  const int n = lattice.period();
  if (n < 2) throw BadPeriod("the periodic lattice needs period >= 2");
  Eigen::VectorXd da(n), db(n);
  for (int i = 0; i < n; ++i) {
    da[i] = lattice.a[i] * (lattice.b[i] - lattice.b[(i + n - 1) % n]);
    db[i] = lattice.a[(i + 1) % n] - lattice.a[i];
  }
  return {da, db};
}

LatticeTrajectory integrate_bm(const ShiftLattice& initial, const IntegratorConfig& config) {
  if (config.step < 1e-12) throw StepUnderflow("integration step below 1e-12");
  if (config.record_every < 1) throw Error("record_every must be positive");
  const int n = initial.period();

  auto rhs = [n](const Eigen::VectorXd& x) {
    ShiftLattice lat{x.head(n), x.tail(n)};
    const auto [da, db] = bm_rhs(lat);
    Eigen::VectorXd out(2 * n);
    out << da, db;
    return out;
  };

  Eigen::VectorXd x(2 * n);
  x << initial.a, initial.b;

  LatticeTrajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(initial);

  const auto steps = static_cast<long>(std::llround(config.t_end / config.step));
  const double dt = config.step;
  for (long s = 1; s <= steps; ++s) {
    const Eigen::VectorXd k1 = rhs(x);
    const Eigen::VectorXd k2 = rhs(x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = rhs(x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = rhs(x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (s % config.record_every == 0 || s == steps) {
      traj.times.push_back(static_cast<double>(s) * dt);
      traj.states.push_back(ShiftLattice{x.head(n), x.tail(n)});
    }
  }
  return traj;
}

bool subalgebra_admissibility(int k) { return 2 * k >= k && 2 * k - 2 < k; }

}  // namespace rmatrix
