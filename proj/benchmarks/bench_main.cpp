#include <benchmark/benchmark.h>

#include "maus/codes.hpp"
#include "maus/dynamics.hpp"
#include "maus/optimal_recovery.hpp"
#include "maus/protocol.hpp"

namespace {

using namespace maus;

void BM_ChannelComposition(benchmark::State& state) {
  const HalfInteger spin{static_cast<int>(state.range(0))};
  const auto a = free_evolution_channel(spin, {1e-3, 5e-4}, 1.0);
  const auto b = free_evolution_channel(spin, {1e-3, 5e-4}, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.then(b));
  }
}
BENCHMARK(BM_ChannelComposition)->Arg(3)->Arg(5)->Arg(7);

void BM_SegmentExponential(benchmark::State& state) {
  const HalfInteger spin{static_cast<int>(state.range(0))};
  const int dn = spin.dimension();
  const Matrix h = compose_systems(
      rwa_pulse_hamiltonian(dn, {{0, 1}}, 0.0, 1.0), Matrix::Identity(2, 2));
  const Matrix gen = dephasing_generator(spin, {1e-3, 5e-4});
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel_of_segment(h, gen, M_PI));
  }
}
BENCHMARK(BM_SegmentExponential)->Arg(3)->Arg(5);

void BM_RunCycle(benchmark::State& state) {
  const HalfInteger spin{static_cast<int>(state.range(0))};
  const CycleSimulator sim(spin, {1e-4, 5e-4});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim.run(100.0));
  }
}
BENCHMARK(BM_RunCycle)->Arg(3)->Arg(5)->Arg(7);

void BM_OptimalRecovery(benchmark::State& state) {
  const CodeSpec code = maus_code(HalfInteger{3});
  const QuantumChannel pipeline =
      QuantumChannel::from_unitary(code.encode)
          .then(nuclear_dephasing_channel(HalfInteger{3}, 1.0, 1e-2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_recovery({pipeline}));
  }
}
BENCHMARK(BM_OptimalRecovery);

}  // namespace

BENCHMARK_MAIN();
