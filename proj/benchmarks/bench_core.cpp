// Microbenchmarks for the hot paths: Pauli application, measurement collapse,
// partial traces and whole protocol sessions. Not part of the test suite.

#include "qss/density_matrix.hpp"
#include "qss/experiments.hpp"
#include "qss/protocol.hpp"
#include "qss/states.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace qss;

void BM_ApplyPauliString(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto [first, second] = states::ghz_pair(states::GhzPairSpec{n, 0});
  std::vector<PauliAxis> axes(n, PauliAxis::X);
  axes[0] = PauliAxis::Y;
  axes[1] = PauliAxis::Y;
  const PauliString op{std::move(axes)};

  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_pauli_string(first, op));
  }
  state.SetComplexityN(1 << n);
}
BENCHMARK(BM_ApplyPauliString)->DenseRange(8, 14, 2)->Complexity();

void BM_MeasureQubit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PureState ghz = states::ghz_canonical(std::vector<int>(n, 0));
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure_qubit(ghz, 1, PauliAxis::X, rng));
  }
}
BENCHMARK(BM_MeasureQubit)->DenseRange(8, 14, 2);

void BM_PartialTrace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PureState dicke = states::dicke(n, n / 2);
  const std::vector<int> keep{1, 2, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(dicke, keep));
  }
}
BENCHMARK(BM_PartialTrace)->DenseRange(6, 12, 2);

void BM_HonestSession(benchmark::State& state) {
  // Check rounds only; a secret payload would make some seeds exhaust the
  // matching-label pool and throw mid-benchmark.
  protocol::ProtocolConfig config;
  config.variant = SchemeVariant::nn(static_cast<int>(state.range(0)));
  config.num_runs = 16;
  config.num_checks = 4;

  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = ++seed;
    benchmark::DoNotOptimize(protocol::run_session(config));
  }
}
BENCHMARK(BM_HonestSession)->DenseRange(3, 6, 1);

}  // namespace

BENCHMARK_MAIN();
