#include <benchmark/benchmark.h>

#include <vector>

#include "annular/entire_function.hpp"
#include "annular/partition.hpp"
#include "annular/precision.hpp"
#include "annular/radial_moduli.hpp"
#include "annular/synthesis.hpp"

using namespace annular;

static void BM_LogMaxModulusExp(benchmark::State& state) {
  auto f = make_exp();
  WideReal t(3.0);
  for (auto _ : state) {
    clear_moduli_cache();
    benchmark::DoNotOptimize(log_max_modulus(f, t));
  }
}
BENCHMARK(BM_LogMaxModulusExp);

static void BM_LogMaxModulusCosh(benchmark::State& state) {
  auto f = make_cosh();
  WideReal t(3.0);
  for (auto _ : state) {
    clear_moduli_cache();
    benchmark::DoNotOptimize(log_max_modulus(f, t));
  }
}
BENCHMARK(BM_LogMaxModulusCosh);

static void BM_LogMinModulusSin(benchmark::State& state) {
  auto f = make_sin();
  WideReal t(3.0);
  for (auto _ : state) {
    clear_moduli_cache();
    benchmark::DoNotOptimize(log_min_modulus(f, t));
  }
}
BENCHMARK(BM_LogMinModulusSin);

static void BM_MuOrbit(benchmark::State& state) {
  auto f = make_exp();
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    clear_moduli_cache();
    WideReal t(2.0);
    for (int i = 0; i < depth; ++i) t = mu(f, t);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_MuOrbit)->Arg(3)->Arg(5);

static void BM_BuildPartition(benchmark::State& state) {
  auto f = make_zexpz();
  WideReal logR(1.5);
  for (auto _ : state) {
    clear_moduli_cache();
    benchmark::DoNotOptimize(build_partition(f, logR, 6));
  }
}
BENCHMARK(BM_BuildPartition);

static void BM_CountAdmissible(benchmark::State& state) {
  TransitionSystem ts;
  const int horizon = 12;
  ts.horizon = horizon;
  for (int i = 0; i < horizon; ++i) {
    ts.n_j.push_back(i);
    ts.I_j.emplace_back();
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(count_admissible(ts, horizon, 2, 6));
}
BENCHMARK(BM_CountAdmissible);

BENCHMARK_MAIN();
