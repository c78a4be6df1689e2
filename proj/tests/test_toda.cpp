#include "rmatrix/toda.hpp"

#include <random>

#include "doctest.h"
#include "rmatrix/lax_flows.hpp"

using namespace rmatrix;

namespace {

TodaChain random_chain(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  TodaChain chain;
  chain.a.resize(n + 1);
  chain.b.resize(n);
  for (int i = 0; i <= n; ++i) chain.a[i] = unif(rng);
  chain.a.array() -= chain.a.mean();
  for (int i = 0; i < n; ++i) chain.b[i] = unif(rng);
  return chain;
}

}  // namespace

TEST_CASE("lambda_matrix: small cases and spectrum") {
  const Eigen::MatrixXd l1 = lambda_matrix(1);
  CHECK(l1(0, 1) == 1.0);
  CHECK(l1(1, 0) == 1.0);
  CHECK(l1(0, 0) == 0.0);

  const Eigen::MatrixXd l2 = lambda_matrix(2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ev(l2);
  CHECK(ev.eigenvalues()[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-13));
  CHECK(ev.eigenvalues()[1] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(ev.eigenvalues()[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

  for (int n : {1, 2, 5}) CHECK(lambda_matrix(n).trace() == 0.0);
  CHECK_THROWS_AS(lambda_matrix(0), BadSize);
  CHECK_THROWS_AS(OpenTodaSystem(0), BadSize);
  CHECK_THROWS_AS(CartanTodaSystem(0), BadSize);
}

TEST_CASE("lax_from_flaschka and the chain round trip") {
  TodaChain unit;
  unit.a = Eigen::VectorXd::Zero(3);
  unit.b = Eigen::VectorXd::Ones(2);
  CHECK((lax_from_flaschka(unit) - lambda_matrix(2)).norm() == 0.0);

  TodaChain c1;
  c1.a = Eigen::Vector2d(1.0, -1.0);
  c1.b = Eigen::VectorXd::Constant(1, 2.0);
  Eigen::MatrixXd expect(2, 2);
  expect << 1, 2, 2, -1;
  CHECK((lax_from_flaschka(c1) - expect).norm() == 0.0);

  std::mt19937_64 rng(101);
  const auto chain = random_chain(3, rng);
  const auto back = chain_from_lax(lax_from_flaschka(chain));
  CHECK((back.a - chain.a).norm() == 0.0);
  CHECK((back.b - chain.b).norm() == 0.0);

  TodaChain bad;
  bad.a = Eigen::VectorXd::Zero(3);
  bad.b = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(lax_from_flaschka(bad), LengthMismatch);
}

TEST_CASE("toda_rhs: table values and the Lax-bracket oracle") {
  TodaChain c;
  c.a = Eigen::Vector2d::Zero();
  c.b = Eigen::VectorXd::Ones(1);
  auto [da, db] = toda_rhs(c);
  CHECK(da[0] == 2.0);
  CHECK(da[1] == -2.0);
  CHECK(db[0] == 0.0);

  // b = 0 decouples the chain
  TodaChain still;
  still.a = Eigen::Vector3d(0.3, -0.1, -0.2);
  still.b = Eigen::VectorXd::Zero(2);
  auto [da0, db0] = toda_rhs(still);
  CHECK(da0.norm() == 0.0);
  CHECK(db0.norm() == 0.0);

  // the Flaschka equations are the split Lax flow in disguise
  std::mt19937_64 rng(103);
  for (int n : {1, 2, 3, 4}) {
    OpenTodaSystem sys(n);
    for (int trial = 0; trial < 25; ++trial) {
      const auto chain = random_chain(n, rng);
      const auto rhs = lax_rhs(sys.r(), sys.hamiltonian(), sys.element(chain));
      const auto mapped = chain_from_lax(rhs.matrix());
      auto [want_a, want_b] = toda_rhs(chain);
      CHECK((mapped.a - want_a).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((mapped.b - want_b).cwiseAbs().maxCoeff() <= 1e-12);
      // the total momentum is conserved identically
      CHECK(std::abs(want_a.sum()) <= 1e-15);
    }
  }
}

TEST_CASE("the open-chain split is non-skew, the Cartan split is skew") {
  OpenTodaSystem open_sys(2);
  CHECK_FALSE(open_sys.r_is_skew());
  CartanTodaSystem cartan_sys(2);
  CHECK(cartan_sys.r_is_skew());
  // both satisfy the mCYBE with c = 1
  CHECK(mcybe_residual(open_sys.r(), 1.0).max_residual <= 1e-12);
  CHECK(mcybe_residual(cartan_sys.r(), 1.0).max_residual <= 1e-12);
}

TEST_CASE("cartan_R_action: the three-part action table") {
  CartanTodaSystem sys(2);
  const auto& alg = sys.algebra();

  Eigen::MatrixXd ym = Eigen::MatrixXd::Zero(3, 3);
  ym.diagonal() << 0.5, 0.2, -0.7;
  const auto y = alg->element_from_matrix(ym);
  CHECK((sys.r_action(y, Side::Plus) - y * 0.5).norm() <= 1e-13);
  CHECK((sys.r_action(y, Side::Minus) + y * 0.5).norm() <= 1e-13);

  Eigen::MatrixXd wm = Eigen::MatrixXd::Zero(3, 3);
  wm(0, 1) = 1.0;
  wm(1, 2) = -2.0;
  const auto w = alg->element_from_matrix(wm);
  CHECK(sys.r_action(w, Side::Minus).norm() <= 1e-14);
  CHECK((sys.r_action(w, Side::Plus) - w).norm() <= 1e-13);

  // completeness: R+ - R- is the identity
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd coeffs(alg->dim());
  for (int i = 0; i < alg->dim(); ++i) coeffs[i] = unif(rng);
  const auto x = alg->element(coeffs);
  CHECK((sys.r_action(x, Side::Plus) - sys.r_action(x, Side::Minus) - x).norm() <= 1e-13);
}

TEST_CASE("cartan_to_flaschka and the coadjoint-orbit oracle") {
  // flat group data gives the unit chain
  CartanCoordinates flat;
  flat.eta = Eigen::Vector3d::Ones();
  flat.omega_plus = Eigen::MatrixXd::Zero(3, 3);
  flat.omega_minus = Eigen::MatrixXd::Zero(3, 3);
  const auto chain0 = cartan_to_flaschka(flat);
  CHECK(chain0.a.norm() == 0.0);
  CHECK((chain0.b - Eigen::VectorXd::Ones(2)).norm() == 0.0);
  CartanTodaSystem sys(2);
  CHECK((sys.orbit_matrix(flat) - lax_from_flaschka(chain0)).norm() <= 1e-13);

  // two sites: z1 = 2 eta2/eta1, b1 = z1/2
  CartanCoordinates two;
  two.eta = Eigen::Vector2d(2.0, 0.5);
  two.omega_plus = Eigen::MatrixXd::Zero(2, 2);
  two.omega_minus = Eigen::MatrixXd::Zero(2, 2);
  const auto chain2 = cartan_to_flaschka(two);
  CHECK(chain2.b[0] == doctest::Approx(0.25).epsilon(1e-14));

  // generic coordinates: the evaluated orbit matches the Flaschka chain and
  // the diagonal telescopes to zero
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> unif(-0.8, 0.8);
  CartanCoordinates coords;
  coords.eta = Eigen::Vector3d(1.4, 0.9, 1.0 / (1.4 * 0.9));
  coords.omega_plus = Eigen::MatrixXd::Zero(3, 3);
  coords.omega_minus = Eigen::MatrixXd::Zero(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      coords.omega_plus(i, j) = unif(rng);
      coords.omega_minus(j, i) = unif(rng);
    }
  const auto chain = cartan_to_flaschka(coords);
  CHECK(std::abs(chain.a.sum()) <= 1e-14);
  CHECK((sys.orbit_matrix(coords) - lax_from_flaschka(chain)).norm() <= 1e-12);

  CartanCoordinates bad = coords;
  bad.eta[1] = -1.0;
  CHECK_THROWS_AS(cartan_to_flaschka(bad), NonPositiveEta);
}

TEST_CASE("the Cartan pipeline and the direct pipeline generate the same flow") {
  CartanTodaSystem cartan_sys(2);
  OpenTodaSystem open_sys(2);

  CartanCoordinates coords;
  coords.eta = Eigen::Vector3d(1.2, 0.8, 1.0 / 0.96);
  coords.omega_plus = Eigen::MatrixXd::Zero(3, 3);
  coords.omega_minus = Eigen::MatrixXd::Zero(3, 3);
  coords.omega_plus(0, 1) = 0.4;
  coords.omega_plus(1, 2) = -0.3;
  coords.omega_minus(1, 0) = 0.2;
  coords.omega_minus(2, 1) = 0.6;

  const Eigen::MatrixXd l0 = cartan_sys.orbit_matrix(coords);
  const auto chain0 = cartan_to_flaschka(coords);
  CHECK((l0 - lax_from_flaschka(chain0)).norm() <= 1e-12);

  // the rhs agree pointwise...
  const auto via_cartan = cartan_sys.flow_rhs(cartan_sys.algebra()->element_from_matrix(l0));
  const auto via_split =
      lax_rhs(open_sys.r(), open_sys.hamiltonian(), open_sys.element(chain0));
  CHECK((via_cartan.matrix() - via_split.matrix()).norm() <= 1e-12);

  // ...so both integrations land on the same endpoint
  const double dt = 1e-3, t_end = 1.0;
  Eigen::MatrixXd l = l0;
  auto rhs = [&](const Eigen::MatrixXd& m) {
    return cartan_sys.flow_rhs(cartan_sys.algebra()->element_from_matrix(m)).matrix().eval();
  };
  for (long s = 0; s < std::llround(t_end / dt); ++s) {
    const Eigen::MatrixXd k1 = rhs(l);
    const Eigen::MatrixXd k2 = rhs(l + 0.5 * dt * k1);
    const Eigen::MatrixXd k3 = rhs(l + 0.5 * dt * k2);
    const Eigen::MatrixXd k4 = rhs(l + dt * k3);
    l += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  IntegratorConfig config;
  config.step = dt;
  config.t_end = t_end;
  config.record_every = 1000;
  const auto direct =
      integrate(open_sys.r(), open_sys.hamiltonian(), open_sys.element(chain0), config);
  CHECK((direct.states.back() - l).norm() <= 1e-9);
}

TEST_CASE("bm_lax_matrix: bands, wrap entries, trace, and spectrum") {
  ShiftLattice lat;
  lat.a = Eigen::Vector3d::Zero();
  lat.b = Eigen::Vector3d(0.1, 0.2, 0.3);
  const Eigen::MatrixXd l = bm_lax_matrix(lat);
  CHECK(l(0, 1) == 1.0);
  CHECK(l(1, 2) == 1.0);
  CHECK(l(2, 0) == 1.0);  // cyclic wrap of S
  CHECK(l(0, 0) == doctest::Approx(0.1));
  CHECK(l.trace() == doctest::Approx(lat.b.sum()).epsilon(1e-14));

  // a = 1, b = 0: the circulant S + S^-1 with spectrum 2cos(2 pi k / 3)
  ShiftLattice circ;
  circ.a = Eigen::Vector3d::Ones();
  circ.b = Eigen::Vector3d::Zero();
  const auto ev = sorted_eigenvalues(bm_lax_matrix(circ));
  CHECK(ev[0].real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ev[1].real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ev[2].real() == doctest::Approx(2.0).epsilon(1e-12));

  ShiftLattice bad;
  bad.a = Eigen::VectorXd::Ones(1);
  bad.b = Eigen::VectorXd::Ones(1);
  CHECK_THROWS_AS(bm_lax_matrix(bad), BadPeriod);
}

TEST_CASE("bm_rhs: fixed point, dense-commutator oracle, trace conservation") {
  // a = 0 freezes the lattice regardless of b
  ShiftLattice frozen;
  frozen.a = Eigen::Vector3d::Zero();
  frozen.b = Eigen::Vector3d(0.4, -0.1, 0.9);
  auto [da0, db0] = bm_rhs(frozen);
  CHECK(da0.norm() == 0.0);
  CHECK(db0.norm() == 0.0);

  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int n : {2, 3, 5}) {
    ShiftLattice lat;
    lat.a.resize(n);
    lat.b.resize(n);
    for (int i = 0; i < n; ++i) {
      lat.a[i] = unif(rng);
      lat.b[i] = unif(rng);
    }
    const Eigen::MatrixXd l = bm_lax_matrix(lat);
    const Eigen::MatrixXd upper = bm_upper_matrix(lat);
    const Eigen::MatrixXd comm = upper * l - l * upper;
    auto [da, db] = bm_rhs(lat);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(comm(i, (i + n - 1) % n) - da[i]) <= 1e-12);
      CHECK(std::abs(comm(i, i) - db[i]) <= 1e-12);
    }
    CHECK(std::abs(db.sum()) <= 1e-14);
  }
}

TEST_CASE("bm flow conserves the spectral invariants") {
  ShiftLattice lat;
  lat.a = Eigen::Vector3d(1.0, 1.0, 1.0);
  lat.b = Eigen::Vector3d(0.3, -0.2, -0.1);

  IntegratorConfig config;
  config.step = 1e-3;
  config.t_end = 5.0;
  config.record_every = 200;
  const auto traj = integrate_bm(lat, config);

  auto powers = [](const ShiftLattice& s) {
    const Eigen::MatrixXd l = bm_lax_matrix(s);
    Eigen::Vector3d out;
    out << l.trace(), (l * l).trace(), (l * l * l).trace();
    return out;
  };
  const Eigen::Vector3d ref = powers(lat);
  for (const auto& state : traj.states)
    CHECK((powers(state) - ref).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("open chain scatters: off-diagonal decay at large times") {
  // empirical property of the open flow, not a quantitative claim: the
  // couplings decay once the chain has sorted itself
  OpenTodaSystem sys(2);
  TodaChain chain;
  chain.a = Eigen::VectorXd::Zero(3);
  chain.b = Eigen::VectorXd::Ones(2);

  IntegratorConfig config;
  config.step = 1e-3;
  config.t_end = 10.0;
  config.record_every = 1 << 20;
  const auto traj = integrate(sys.r(), sys.hamiltonian(), sys.element(chain), config);
  const auto endpoint = chain_from_lax(traj.states.back());
  CHECK(endpoint.b.cwiseAbs().maxCoeff() <= 1e-2);
}

TEST_CASE("band-threshold admissibility") {
  CHECK(subalgebra_admissibility(0));
  CHECK(subalgebra_admissibility(1));
  CHECK_FALSE(subalgebra_admissibility(2));
  CHECK_FALSE(subalgebra_admissibility(-1));
  CHECK_FALSE(subalgebra_admissibility(5));
}
