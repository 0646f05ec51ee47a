#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "qpm/analytic.hpp"
#include "qpm/protocol.hpp"

using namespace qpm;

namespace {

MeasurementConfig fig1_config(double xi) {
  MeasurementConfig cfg;
  cfg.xi = xi;
  cfg.gamma = std::acos(1.0 / std::sqrt(3.0));
  cfg.eta = std::numbers::pi / 4;
  return cfg;
}

void BM_Eigensystem4x4(benchmark::State& state) {
  const ComplexMatrix h = build_hamiltonian(fig1_config(0.1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eigensystem(h));
  }
}
BENCHMARK(BM_Eigensystem4x4);

void BM_Propagator(benchmark::State& state) {
  const ComplexMatrix h = build_hamiltonian(fig1_config(0.1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagator(h, 1.3));
  }
}
BENCHMARK(BM_Propagator);

void BM_LindbladRhs(benchmark::State& state) {
  const MeasurementConfig cfg = fig1_config(0.1);
  const ComplexMatrix h = build_hamiltonian(cfg);
  EnvironmentConfig env;
  env.kappa_s = 0.02;
  env.kappa_p = 0.02;
  const auto ops = build_lindblad_ops(env);
  const ComplexMatrix rho = density(kron(cfg.system_init, cfg.probe_init));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lindblad_rhs(rho, h, ops));
  }
}
BENCHMARK(BM_LindbladRhs);

void BM_UnitaryRun(benchmark::State& state) {
  const MeasurementConfig cfg = fig1_config(0.1);
  const RunOptions opts{static_cast<std::size_t>(state.range(0)), 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_single(cfg, {}, {}, opts));
  }
}
BENCHMARK(BM_UnitaryRun)->Arg(100)->Arg(1000);

void BM_LindbladRun(benchmark::State& state) {
  const MeasurementConfig cfg = fig1_config(0.1);
  EnvironmentConfig env;
  env.kappa_s = 0.02;
  env.system_axis = {1, 0, 0};
  const RunOptions opts{100, cfg.duration() / static_cast<double>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_single(cfg, {}, env, opts));
  }
}
BENCHMARK(BM_LindbladRun)->Arg(2000)->Arg(20000);

void BM_ExactFinalState(benchmark::State& state) {
  const MeasurementConfig cfg = fig1_config(0.1);
  const auto [cp, cm] = probe_amplitudes(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_final_state(cfg, cp, cm));
  }
}
BENCHMARK(BM_ExactFinalState);

}  // namespace

BENCHMARK_MAIN();
