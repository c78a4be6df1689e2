#include <benchmark/benchmark.h>

#include "rmatrix/bialgebra.hpp"
#include "rmatrix/dialgebra.hpp"
#include "rmatrix/factorization.hpp"
#include "rmatrix/lax_flows.hpp"
#include "rmatrix/liealg.hpp"
#include "rmatrix/toda.hpp"

using namespace rmatrix;

namespace {

void BM_build_algebra(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto alg = make_sl(m);
    benchmark::DoNotOptimize(alg);
  }
}
BENCHMARK(BM_build_algebra)->Arg(3)->Arg(4)->Arg(6);

void BM_mcybe_scan(benchmark::State& state) {
  const auto s = make_sl_skew_upper(static_cast<int>(state.range(0)));
  const auto r = r_from_split(s.algebra, s.plus_indices, s.minus_indices);
  for (auto _ : state) {
    auto rep = mcybe_residual(r, 1.0);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_mcybe_scan)->Arg(3)->Arg(4);

void BM_jacobi_scan(benchmark::State& state) {
  const auto s = make_sl_skew_upper(static_cast<int>(state.range(0)));
  const auto r = r_from_split(s.algebra, s.plus_indices, s.minus_indices);
  for (auto _ : state) {
    auto res = jacobi_residual_r(r);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_jacobi_scan)->Arg(3)->Arg(4);

void BM_rr_bracket(benchmark::State& state) {
  // the invariant Casimir tensor (inverse Gram) keeps the symmetric part
  // ad-invariant at any dimension
  auto sl3 = make_sl(3);
  const TensorR r(sl3, sl3->gram().inverse());
  for (auto _ : state) {
    auto t = rr_bracket(r);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_rr_bracket);

void BM_toda_rk4(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  OpenTodaSystem sys(n);
  TodaChain chain;
  chain.a = Eigen::VectorXd::Zero(n + 1);
  chain.b = Eigen::VectorXd::Ones(n);
  const auto l0 = sys.element(chain);
  IntegratorConfig config;
  config.step = 1e-2;
  config.t_end = 1.0;
  config.record_every = 1 << 20;
  for (auto _ : state) {
    auto traj = integrate(sys.r(), sys.hamiltonian(), l0, config);
    benchmark::DoNotOptimize(traj);
  }
}
BENCHMARK(BM_toda_rk4)->Arg(2)->Arg(3);

void BM_propagate_qr(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  OpenTodaSystem sys(n);
  const auto lam = sys.lambda();
  const auto h1 = sys.hamiltonian();
  for (auto _ : state) {
    auto res = propagate(lam, h1, 1.0, SplitKind::QR);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_propagate_qr)->Arg(2)->Arg(3);

void BM_bm_rhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ShiftLattice lat;
  lat.a = Eigen::VectorXd::Ones(n);
  lat.b = Eigen::VectorXd::LinSpaced(n, -0.5, 0.5);
  for (auto _ : state) {
    auto rhs = bm_rhs(lat);
    benchmark::DoNotOptimize(rhs);
  }
}
BENCHMARK(BM_bm_rhs)->Arg(8)->Arg(64);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
