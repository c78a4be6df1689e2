#include "rmatrix/lax_flows.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rmatrix {

AlgebraElement lax_rhs(const REndomorphism& r, const PolynomialObservable& h,
                       const AlgebraElement& l, Side side) {
  return bracket(l, m_matrix(r, h, l, side));
}

namespace {

Eigen::VectorXd trace_powers(const Eigen::MatrixXd& m, int count) {
  Eigen::VectorXd out(count);
  Eigen::MatrixXd p = m;
  for (int k = 0; k < count; ++k) {
    p = p * m;
    out[k] = p.trace() / static_cast<double>(k + 2);
  }
  return out;
}

void record(Trajectory& traj, double t, const Eigen::VectorXd& coeffs, int n_invariants) {
  const Eigen::MatrixXd m = traj.algebra->materialise(coeffs);
  traj.times.push_back(t);
  traj.states.push_back(m);
  traj.invariants.push_back(trace_powers(m, n_invariants));
  traj.eigenvalues.push_back(sorted_eigenvalues(m));
}

}  // namespace

Trajectory integrate(const REndomorphism& r, const PolynomialObservable& h,
                     const AlgebraElement& l0, const IntegratorConfig& config) {
  if (config.step < 1e-12) throw StepUnderflow("integration step below 1e-12");
  if (config.t_end < 0.0) throw Error("t_end must be non-negative");
  if (config.record_every < 1) throw Error("record_every must be positive");
  const auto& alg = l0.algebra();
  const int n_invariants = std::max(1, alg->matrix_size() - 1);

  auto rhs = [&](const Eigen::VectorXd& x) {
    return lax_rhs(r, h, AlgebraElement(alg, x), Side::Plus).coeffs();
  };

  Trajectory traj;
  traj.algebra = alg;
  Eigen::VectorXd x = l0.coeffs();
  record(traj, 0.0, x, n_invariants);

  const auto steps = static_cast<long>(std::llround(config.t_end / config.step));
  const double dt = config.step;
  for (long s = 1; s <= steps; ++s) {
    const Eigen::VectorXd k1 = rhs(x);
    const Eigen::VectorXd k2 = rhs(x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = rhs(x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = rhs(x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (s % config.record_every == 0 || s == steps)
      record(traj, static_cast<double>(s) * dt, x, n_invariants);
  }
  return traj;
}

ConservationReport conservation_report(const Trajectory& traj) {
  if (traj.times.empty()) throw EmptyTrajectory("trajectory has no recorded states");
  ConservationReport rep;
  rep.invariant_drift = Eigen::VectorXd::Zero(traj.invariants.front().size());
  for (size_t t = 0; t < traj.times.size(); ++t) {
    rep.invariant_drift = rep.invariant_drift.cwiseMax(
        (traj.invariants[t] - traj.invariants.front()).cwiseAbs());
    rep.eigenvalue_drift =
        std::max(rep.eigenvalue_drift,
                 (traj.eigenvalues[t] - traj.eigenvalues.front()).cwiseAbs().maxCoeff());
  }
  return rep;
}

Eigen::VectorXcd sorted_eigenvalues(const Eigen::MatrixXd& m) {
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  Eigen::VectorXcd ev = solver.eigenvalues();
  std::vector<std::complex<double>> v(ev.data(), ev.data() + ev.size());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (int i = 0; i < ev.size(); ++i) ev[i] = v[i];
  return ev;
}

AlgebraElement random_tridiagonal_state(const AlgebraPtr& algebra, std::uint64_t seed) {
  const int m = algebra->matrix_size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  Eigen::VectorXd diag(m);
  for (int i = 0; i < m; ++i) diag[i] = unif(rng);
  diag.array() -= diag.mean();  // traceless
  Eigen::VectorXd off(m - 1);
  for (int i = 0; i + 1 < m; ++i) off[i] = unif(rng);

  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  l.diagonal() = diag;
  for (int i = 0; i + 1 < m; ++i) l(i, i + 1) = l(i + 1, i) = off[i];
  return algebra->element_from_matrix(l);
}

double involution_scan(const REndomorphism& r,
                       const std::vector<PolynomialObservable>& hamiltonians, int samples,
                       std::uint64_t seed,
                       const std::function<AlgebraElement(std::uint64_t)>& sampler) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const AlgebraElement l = sampler ? sampler(seed + static_cast<std::uint64_t>(s))
                                     : random_tridiagonal_state(
                                           r.algebra(), seed + static_cast<std::uint64_t>(s));
    for (size_t i = 0; i < hamiltonians.size(); ++i)
      for (size_t j = 0; j < hamiltonians.size(); ++j)
        worst = std::max(worst,
                         std::abs(lie_poisson_r(r, hamiltonians[i], hamiltonians[j], l)));
  }
  return worst;
}

}  // namespace rmatrix
