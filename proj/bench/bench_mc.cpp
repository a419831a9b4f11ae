// Serial reference vs OpenMP on the functional simulation kernel. Both
// produce identical tables; only wall time differs.

#include <benchmark/benchmark.h>

#include "levyaf/functionals.hpp"

using namespace levyaf;

namespace {

void run(benchmark::State& state, const CharacteristicExponent& model, Execution exec) {
  const auto kernel = gaussian_kernel();
  FunctionalPlan plan;
  plan.n_list = {4, 8};
  plan.deltas = {0.25, 0.5, 1.0};
  plan.h = 1e-2;
  const auto paths = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto tab = simulate_functionals(model, &kernel, plan, paths, 1, exec);
    benchmark::DoNotOptimize(tab.band.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Brownian_Serial(benchmark::State& s) { run(s, CharacteristicExponent::brownian(1.0), Execution::Serial); }
void BM_Brownian_Parallel(benchmark::State& s) { run(s, CharacteristicExponent::brownian(1.0), Execution::Parallel); }
void BM_Relativistic_Serial(benchmark::State& s) {
  run(s, CharacteristicExponent::relativistic(1.0, 1.5), Execution::Serial);
}
void BM_Relativistic_Parallel(benchmark::State& s) {
  run(s, CharacteristicExponent::relativistic(1.0, 1.5), Execution::Parallel);
}

}  // namespace

BENCHMARK(BM_Brownian_Serial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Brownian_Parallel)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Relativistic_Serial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Relativistic_Parallel)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
