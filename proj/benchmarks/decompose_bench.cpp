#include <benchmark/benchmark.h>

#include "monoforms/decompose.hpp"
#include "monoforms/inf.hpp"
#include "monoforms/selftest.hpp"
#include "monoforms/theta.hpp"

using namespace monoforms;

namespace {

TruthTable random_tt(selftest::Rng& rng, int arity) {
  std::string values(static_cast<size_t>(1) << arity, '0');
  for (char& c : values) c = static_cast<char>('0' + rng.next(2));
  return TruthTable{arity, std::move(values)};
}

void BM_SynthInf(benchmark::State& state) {
  const int arity = static_cast<int>(state.range(0));
  selftest::Rng rng(17);
  TruthTable tt = random_tt(rng, arity);
  for (auto _ : state) {
    ImplicativeForm inf = synth_inf(tt);
    benchmark::DoNotOptimize(inf.parts.data());
  }
}
BENCHMARK(BM_SynthInf)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_DecomposeRandomPoset(benchmark::State& state) {
  selftest::Rng rng(23);
  PosetPtr domain = selftest::random_poset(rng, static_cast<int>(state.range(0)));
  Algebra alg = Algebra::builtin("chain-primal:5");
  PosetMap psi = selftest::random_map(rng, domain, alg.levels_ptr());
  for (auto _ : state) {
    DecomposeResult result = decompose(psi, alg, Strategy::t1);
    benchmark::DoNotOptimize(result.form.parts.data());
  }
}
BENCHMARK(BM_DecomposeRandomPoset)->Arg(10)->Arg(40)->Arg(100);

void BM_SynthesizeMv(benchmark::State& state) {
  selftest::Rng rng(29);
  MvTable table{3, static_cast<int>(state.range(0)), {}};
  int points = 1;
  for (int j = 0; j < table.n; ++j) points *= 3;
  table.values.resize(static_cast<size_t>(points));
  for (int& v : table.values) v = rng.next(3);
  for (auto _ : state) {
    MvResult result = synthesize_mv(table);
    benchmark::DoNotOptimize(result.formula.node_count());
  }
}
BENCHMARK(BM_SynthesizeMv)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
