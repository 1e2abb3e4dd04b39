#include <benchmark/benchmark.h>

#include "monoforms/algebra.hpp"

using namespace monoforms;

namespace {

void BM_CheckAxiomsChain(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  Algebra alg = Algebra::builtin("chain-primal:" + std::to_string(q));
  for (auto _ : state) {
    AxiomReport report = check_axioms(alg, AxiomSystem::A);
    benchmark::DoNotOptimize(report.checks.data());
  }
}
BENCHMARK(BM_CheckAxiomsChain)->Arg(4)->Arg(8)->Arg(12);

void BM_BuiltinConstruction(benchmark::State& state) {
  for (auto _ : state) {
    Algebra alg = Algebra::builtin("chain-dual:5");
    benchmark::DoNotOptimize(alg.level_count());
  }
}
BENCHMARK(BM_BuiltinConstruction);

}  // namespace
