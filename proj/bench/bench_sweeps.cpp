// Serial reference vs OpenMP kernels for the sweep workloads.
#include <benchmark/benchmark.h>

#include "trispin/sweeps.hpp"

using namespace trispin;

namespace {

const HamiltonianParams kBase{-2.0, 0.09, 0.0, 0.0, 3, true};

Schedule case_a_schedule() {
  Schedule s;
  s.control = Knob::J2;
  s.c_end = 2.0;
  s.total_time = 200.0;
  s.sinh_sharpness = 7.0;
  s.sinh_center = 0.5;
  return s;
}

DecoherenceParams case_a_relaxation() {
  DecoherenceParams d;
  d.t2_eff = 0.150;
  d.step_duration = 0.146 / 8;
  return d;
}

void BM_PhaseGridSerial(benchmark::State& state) {
  const Range r{0.0, 2.0, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(reference::phase_grid(kBase, r, r));
}

void BM_PhaseGridParallel(benchmark::State& state) {
  const Range r{0.0, 2.0, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(phase_grid(kBase, r, r));
}

void BM_MSweepSerial(benchmark::State& state) {
  const std::vector<int> ms{2, 4, 8, 16, 32, 64};
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::min_fidelity_vs_steps(
        kBase, case_a_schedule(), case_a_relaxation(), ms, Evolution::ExactSegmentwise));
  }
}

void BM_MSweepParallel(benchmark::State& state) {
  const std::vector<int> ms{2, 4, 8, 16, 32, 64};
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_fidelity_vs_steps(kBase, case_a_schedule(), case_a_relaxation(),
                                                   ms, Evolution::ExactSegmentwise));
  }
}

}  // namespace

BENCHMARK(BM_PhaseGridSerial)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhaseGridParallel)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MSweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
