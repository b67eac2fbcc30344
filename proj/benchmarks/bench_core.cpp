// Microbenchmarks for the cost centers: monodromy integration (both
// integrators), the generator exponential, block orthonormalization, and the
// template bound check. Run manually; not part of the test suite.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "floquet/blockdiag.hpp"
#include "floquet/conjugation.hpp"
#include "floquet/decomposition.hpp"
#include "floquet/potential.hpp"
#include "floquet/propagator.hpp"

using namespace floquet;

namespace {

// 2 cos(2x)(1 + cos t), the standard driven pair.
FourierPotential driven_pair() {
  ModeHarmonics mode;
  mode.k = 2;
  mode.harmonics = {{0, Complex(1.0, 0.0)},
                    {1, Complex(0.5, 0.0)},
                    {-1, Complex(0.5, 0.0)}};
  PotentialClass klass;
  klass.c_v = 54.0;
  return FourierPotential({mode}, klass);
}

// Deterministic near-identity unitary block of odd size 2N+1.
CMatrix unitary_block(int N) {
  const int n = 2 * N + 1;
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  CMatrix a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = Complex(unif(rng), unif(rng));
  CMatrix skew = (a - a.adjoint()) * (0.05 / n);
  Generator g{OperatorMatrix(skew, N, "bench")};
  return exp_skew(g, -1).m;
}

void bm_monodromy(benchmark::State& state, Method method) {
  const int K = static_cast<int>(state.range(0));
  ModeGrid grid(K, std::max(1, K / 4));
  FourierPotential p = driven_pair();
  IntegratorConfig cfg;
  cfg.method = method;
  for (auto _ : state)
    benchmark::DoNotOptimize(monodromy(p, 2.0 * M_PI, grid, cfg));
}

void BM_monodromy_rk4(benchmark::State& state) { bm_monodromy(state, Method::RK4); }
void BM_monodromy_split(benchmark::State& state) { bm_monodromy(state, Method::SplitStep); }

void BM_exp_skew(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  ModeGrid grid(K, std::max(1, K / 4));
  Generator g = build_generator(driven_pair(), grid);
  for (auto _ : state) benchmark::DoNotOptimize(exp_skew(g, -1));
}

void BM_orthonormalize(benchmark::State& state) {
  CMatrix block = unitary_block(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(orthonormalize(block));
}

void BM_check_bound(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  OperatorMatrix m(K, "bench");
  for (int j = -K; j <= K; ++j)
    for (int k = -K; k <= K; ++k)
      m.at(j, k) = 2.0 / (bracket(j) * bracket(k) * std::pow(bracket(j - k), 2.0));
  DecayBound shape{1.0, 0.0, 1.0, 1.0, 2.0};
  Region region = Region::square(K / 2);
  for (auto _ : state) benchmark::DoNotOptimize(check_bound(m, shape, region));
}

}  // namespace

BENCHMARK(BM_monodromy_rk4)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_monodromy_split)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_exp_skew)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_orthonormalize)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_check_bound)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
