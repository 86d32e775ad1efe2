#include <benchmark/benchmark.h>

#include "hallbridge/dh.hpp"

using namespace hallbridge;

namespace {

Quiver a2() { return Quiver::validate({{"1", "2"}, {{"1", "2", "a"}}}); }

// Hall tables for every class up to (n, n), from a cold engine.
void BM_HallTables(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) {
    RepEngine e(a2(), static_cast<int>(state.range(0)));
    for (ClassId l : e.enumerate_isoclasses({n, n})) benchmark::DoNotOptimize(e.hall_table(l).counts.size());
  }
}
BENCHMARK(BM_HallTables)->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMillisecond);

// All twisted products [C_A + C*_B] * [C_X + C*_Y] with A, B, X, Y <= (1,1).
void BM_ComplexProducts(benchmark::State& state) {
  for (auto _ : state) {
    RepEngine e(a2(), static_cast<int>(state.range(0)));
    ComplexSpace cs(e);
    const auto objects = e.enumerate_isoclasses({1, 1});
    for (ClassId a : objects)
      for (ClassId b : objects) benchmark::DoNotOptimize(cs.twisted_product(cs.plain(a, e.zero_class()), cs.plain(e.zero_class(), b)).size());
  }
}
BENCHMARK(BM_ComplexProducts)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

// The commutator relation for every pair of classes up to (1,1).
void BM_MainRelation(benchmark::State& state) {
  for (auto _ : state) {
    RepEngine e(a2(), static_cast<int>(state.range(0)));
    HallAlgebra h(e);
    ComplexSpace cs(e);
    BridgelandAlgebra dh(cs, h);
    const auto objects = e.enumerate_isoclasses({1, 1});
    for (ClassId a : objects)
      for (ClassId b : objects) benchmark::DoNotOptimize(dh.main_relation_check(h.basis(a), h.basis(b)).equal);
  }
}
BENCHMARK(BM_MainRelation)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
