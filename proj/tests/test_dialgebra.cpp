#include "rmatrix/dialgebra.hpp"

#include <random>

#include "doctest.h"
#include "rmatrix/liealg.hpp"

using namespace rmatrix;

namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

AlgebraElement random_element(const AlgebraPtr& alg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd c(alg->dim());
  for (int i = 0; i < alg->dim(); ++i) c[i] = unif(rng);
  return alg->element(c);
}

// Borel split of sl(3): upper-triangular traceless vs strictly lower.
// make_sl(3) basis order: E01 E02 E10 E12 E20 E21 H1 H2.
SplitAlgebra sl3_borel() {
  SplitAlgebra s;
  s.algebra = make_sl(3);
  s.plus_indices = {0, 1, 3, 6, 7};
  s.minus_indices = {2, 4, 5};
  return s;
}

REndomorphism split_r(const SplitAlgebra& s) {
  return r_from_split(s.algebra, s.plus_indices, s.minus_indices);
}

}  // namespace

TEST_CASE("r_from_split on an adapted sl(2) basis has signature (+1,-1,-1)") {
  // basis adapted to skew (+) upper-triangular traceless: {X-Y, H, X}
  auto alg = LieAlgebra::build(
      "sl2-adapted", {mat2(0, 1, -1, 0), mat2(1, 0, 0, -1), mat2(0, 1, 0, 0)});
  const auto r = r_from_split(alg, {0}, {1, 2});
  Eigen::Vector3d diag = r.matrix().diagonal();
  CHECK(diag[0] == 1.0);
  CHECK(diag[1] == -1.0);
  CHECK(diag[2] == -1.0);
  CHECK((r.matrix() * r.matrix() - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-12);
}

TEST_CASE("trivial split of a one-dimensional algebra gives R = I") {
  auto alg = LieAlgebra::build("abelian", {mat2(1, 0, 0, -1)});
  const auto r = r_from_split(alg, {0}, {});
  CHECK(r.matrix()(0, 0) == 1.0);
}

TEST_CASE("skew/upper split of sl(3) has trace dim g+ - dim g-") {
  const auto s = make_sl_skew_upper(3);
  const auto r = split_r(s);
  CHECK(r.matrix().trace() == doctest::Approx(3.0 - 5.0));
  // R+ - R- = I holds by construction
  CHECK((r.half_shifted(+1.0) - r.half_shifted(-1.0) -
         Eigen::MatrixXd::Identity(8, 8)).norm() == 0.0);
}

TEST_CASE("r_from_split rejects bad partitions") {
  const auto s = make_sl_skew_upper(2);
  CHECK_THROWS_AS(r_from_split(s.algebra, {0}, {1}), NotComplementary);
  CHECK_THROWS_AS(r_from_split(s.algebra, {0, 1}, {1, 2}), NotComplementary);
  // {H, X-Y} does not close: [H, X-Y] = 2(X+Y) leaves the span
  CHECK_THROWS_AS(r_from_split(s.algebra, {0, 1}, {2}), NotSubalgebra);
}

TEST_CASE("bracket_r on a split: restriction to the subalgebras") {
  const auto s = sl3_borel();
  const auto r = split_r(s);
  std::mt19937_64 rng(23);

  // both arguments in g+: plain bracket
  const auto u = s.algebra->basis_element(0);  // E01
  const auto v = s.algebra->basis_element(3);  // E12
  CHECK((bracket_r(r, u, v) - bracket(u, v)).norm() <= 1e-14);

  // one argument in each subalgebra: zero
  const auto w = s.algebra->basis_element(2);  // E10
  CHECK(bracket_r(r, u, w).norm() <= 1e-14);

  // generic elements: equals [X+, Y+] - [X-, Y-] via projections
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_element(s.algebra, rng);
    const auto y = random_element(s.algebra, rng);
    CHECK((bracket_r(r, x, y) + bracket_r(r, y, x)).norm() <= 1e-12);
    auto proj = [&](const AlgebraElement& e, const std::vector<int>& idx) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(s.algebra->dim());
      for (int i : idx) c[i] = e.coeffs()[i];
      return s.algebra->element(c);
    };
    const auto expect = bracket(proj(x, s.plus_indices), proj(y, s.plus_indices)) -
                        bracket(proj(x, s.minus_indices), proj(y, s.minus_indices));
    CHECK((bracket_r(r, x, y) - expect).norm() <= 1e-12);
  }
}

TEST_CASE("mcybe_residual: split solutions, identity, and zero") {
  for (const auto& s : {make_sl_skew_upper(2), make_sl_skew_upper(3),
                        make_sl_skew_upper(4), make_gl_triangular(2)}) {
    const auto rep = mcybe_residual(split_r(s), 1.0);
    CHECK(rep.max_residual <= 1e-12);
  }

  // R = I: residual pattern (1-c) [e_i, e_j], zero exactly at c = 1
  auto alg = make_sl(2);
  const REndomorphism identity(alg, Eigen::MatrixXd::Identity(3, 3));
  CHECK(mcybe_residual(identity, 1.0).max_residual <= 1e-15);
  double worst_bracket = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst_bracket = std::max(worst_bracket,
                               bracket(alg->basis_element(i), alg->basis_element(j)).norm());
  CHECK(mcybe_residual(identity, 0.5).max_residual ==
        doctest::Approx(0.5 * worst_bracket).epsilon(1e-12));

  const REndomorphism zero(alg, Eigen::MatrixXd::Zero(3, 3));
  CHECK(mcybe_residual(zero, 0.0).max_residual == 0.0);
}

TEST_CASE("jacobi_residual_r certifies the second bracket") {
  const auto s2 = make_sl_skew_upper(2);
  CHECK(jacobi_residual_r(split_r(s2)) <= 1e-12);

  auto alg = make_sl(3);
  const REndomorphism zero(alg, Eigen::MatrixXd::Zero(8, 8));
  CHECK(jacobi_residual_r(zero) == 0.0);

  // a generic R fails Jacobi, and the residual matches the brute-force
  // evaluation of the cyclic double bracket (factor -1/4)
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::MatrixXd rm(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) rm(i, j) = unif(rng);
  const REndomorphism r(alg, rm);
  CHECK(jacobi_residual_r(r) > 1e-3);

  double worst_gap = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k) {
        const auto ei = alg->basis_element(i);
        const auto ej = alg->basis_element(j);
        const auto ek = alg->basis_element(k);
        const auto brute = bracket_r(r, bracket_r(r, ei, ej), ek) +
                           bracket_r(r, bracket_r(r, ej, ek), ei) +
                           bracket_r(r, bracket_r(r, ek, ei), ej);
        auto bbar = [&](const AlgebraElement& x, const AlgebraElement& y) {
          return bracket(r.apply(x), r.apply(y)) -
                 r.apply(bracket(r.apply(x), y) + bracket(x, r.apply(y)));
        };
        const auto via_identity =
            (bracket(bbar(ei, ej), ek) + bracket(bbar(ek, ei), ej) +
             bracket(bbar(ej, ek), ei)) * (-0.25);
        worst_gap = std::max(worst_gap, (brute - via_identity).norm());
      }
  CHECK(worst_gap <= 1e-12);
}

TEST_CASE("r_plus/minus are homomorphisms from the R-bracket for split R") {
  for (const auto& s : {make_sl_skew_upper(2), make_sl_skew_upper(3),
                        make_sl_skew_upper(4), make_gl_triangular(2)}) {
    const auto r = split_r(s);
    const auto& alg = s.algebra;
    for (double sign : {+1.0, -1.0}) {
      const Eigen::MatrixXd half = r.half_shifted(sign);
      double worst = 0.0;
      for (int i = 0; i < alg->dim(); ++i)
        for (int j = 0; j < alg->dim(); ++j) {
          const auto x = alg->basis_element(i);
          const auto y = alg->basis_element(j);
          const auto lhs = bracket(alg->element(half * x.coeffs()),
                                   alg->element(half * y.coeffs()));
          const auto rhs = alg->element(half * bracket_r(r, x, y).coeffs());
          worst = std::max(worst, (lhs - rhs).norm());
        }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("lie_poisson_r: antisymmetry, linear functionals, involution") {
  const auto s = make_sl_skew_upper(3);
  const auto r = split_r(s);
  std::mt19937_64 rng(37);

  const auto h1 = PolynomialObservable::trace_power(1);
  const auto h2 = PolynomialObservable::trace_power(2);
  const auto l = random_element(s.algebra, rng);
  CHECK(lie_poisson_r(r, h1, h1, l) == doctest::Approx(0.0).epsilon(1e-13));

  const auto xe = random_element(s.algebra, rng);
  const auto ye = random_element(s.algebra, rng);
  CHECK(lie_poisson_r(r, PolynomialObservable::linear(xe), PolynomialObservable::linear(ye),
                      l) == doctest::Approx(pairing(l, bracket_r(r, xe, ye))).epsilon(1e-12));

  // Casimirs are in involution for the R-bracket at arbitrary states
  for (int trial = 0; trial < 50; ++trial) {
    const auto ll = random_element(s.algebra, rng);
    CHECK(std::abs(lie_poisson_r(r, h1, h2, ll)) <= 1e-9);
  }
}

TEST_CASE("m_matrix: projections of the gradient") {
  const auto s = make_sl_skew_upper(2);
  const auto r = split_r(s);
  const auto h1 = PolynomialObservable::trace_power(1);

  // tridiagonal L: M+ is the skew part of the decomposition L = S + T with
  // T upper triangular, here S carries the sub-diagonal of L
  Eigen::MatrixXd lm = mat2(0.7, 1.3, 1.3, -0.7);
  const auto l = s.algebra->element_from_matrix(lm);
  const auto m_plus = m_matrix(r, h1, l, Side::Plus);
  Eigen::MatrixXd strict_lower = lm.triangularView<Eigen::StrictlyLower>();
  const Eigen::MatrixXd skew_part = strict_lower - strict_lower.transpose();
  CHECK((m_plus.matrix() - skew_part).norm() <= 1e-13);

  // diagonal L sits entirely in the minus block
  const auto ld = s.algebra->element_from_matrix(mat2(0.4, 0, 0, -0.4));
  CHECK(m_matrix(r, h1, ld, Side::Plus).norm() <= 1e-14);

  // M+ - M- = grad H
  std::mt19937_64 rng(41);
  const auto sl3 = make_sl_skew_upper(3);
  const auto r3 = split_r(sl3);
  const auto lr = random_element(sl3.algebra, rng);
  const auto gap = m_matrix(r3, h1, lr, Side::Plus) - m_matrix(r3, h1, lr, Side::Minus);
  CHECK((gap - h1.gradient(lr)).norm() <= 1e-13);
}

TEST_CASE("the open-Toda split is not skew for the trace form") {
  const auto s = make_sl_skew_upper(3);
  CHECK_FALSE(is_skew_adjoint(split_r(s)));
}

TEST_CASE("double of a dialgebra: projections and the induced split") {
  const auto s = make_sl_skew_upper(2);
  const auto r = split_r(s);
  const auto dbl = build_double(s.algebra, r);
  const int n = s.algebra->dim();
  std::mt19937_64 rng(43);

  // diagonal pairs are fixed by the delta projector and killed by P_gR
  const auto x = random_element(s.algebra, rng);
  const Eigen::VectorXd diag = dbl.embed(x, x);
  CHECK((dbl.p_gr.matrix() * diag).norm() <= 1e-13);
  CHECK((dbl.p_delta.matrix() * diag - diag).norm() <= 1e-13);

  // complementary and idempotent
  const Eigen::MatrixXd sum = dbl.p_gr.matrix() + dbl.p_delta.matrix();
  CHECK((sum - Eigen::MatrixXd::Identity(2 * n, 2 * n)).norm() <= 1e-12);
  CHECK((dbl.p_gr.matrix() * dbl.p_gr.matrix() - dbl.p_gr.matrix()).norm() <= 1e-12);
  CHECK((dbl.p_delta.matrix() * dbl.p_delta.matrix() - dbl.p_delta.matrix()).norm() <= 1e-12);

  // componentwise bracket on the ambient algebra
  const auto y = random_element(s.algebra, rng);
  const auto u = random_element(s.algebra, rng);
  const auto v = random_element(s.algebra, rng);
  const Eigen::VectorXd lhs = dbl.ambient->bracket_coeffs(dbl.embed(x, y), dbl.embed(u, v));
  const Eigen::VectorXd rhs = dbl.embed(bracket(x, u), bracket(y, v));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);

  // the induced r-matrix on the double satisfies the mCYBE with c = 1
  const auto rep = mcybe_residual(dbl.r_double(), 1.0);
  CHECK(rep.max_residual <= 1e-10);

  // a generic endomorphism is rejected
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(n, n);
  bad(0, 1) = 1.0;
  bad(1, 0) = -1.0;
  CHECK_THROWS_AS(build_double(s.algebra, REndomorphism(s.algebra, bad)), NotMCYBE);
}
