#include <benchmark/benchmark.h>

#include "losr/freeset.hpp"
#include "losr/transform.hpp"

using namespace losr;

static void BM_Tensor(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  CMatrix a = random_hermitian(d, rng), b = random_hermitian(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(tensor(a, b));
}
BENCHMARK(BM_Tensor)->Arg(4)->Arg(8)->Arg(16);

static void BM_ApplyEncode(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  PartyWiring w{quantum_system(2), quantum_system(d), quantum_system(2),
                quantum_system(2)};
  ChoiOperator ja = random_cptp(2, d, rng), jb = random_cptp(2, 2, rng);
  Resource r = from_channel(compose_parallel(ja, jb), w);
  LosrTransform enc = sq_encode(Party::A, d);
  for (auto _ : state) benchmark::DoNotOptimize(apply(enc, r));
}
BENCHMARK(BM_ApplyEncode)->Arg(2)->Arg(3);

static void BM_BoxLocalLP(benchmark::State& state) {
  CorrelationTable pr = pr_box();
  for (auto _ : state) benchmark::DoNotOptimize(box_is_local(pr));
}
BENCHMARK(BM_BoxLocalLP);

static void BM_BoxConvertibleLP(benchmark::State& state) {
  CorrelationTable pr = pr_box();
  CorrelationTable det = deterministic_box(0, 0, 2, 2, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(box_convertible(pr, det));
}
BENCHMARK(BM_BoxConvertibleLP);

BENCHMARK_MAIN();
