#include <benchmark/benchmark.h>

#include "dquant/serialize.hpp"

using namespace dquant;

namespace {

OrbitPoint point_for(const LeviPtr& lv) {
  std::vector<Rational> lam;
  for (std::size_t i = 0; i < lv->complement.size(); ++i) lam.push_back(Rational(static_cast<long>(i) + 2));
  return make_orbit_point(lv, lam);
}

LeviPtr levi_for(int which) {
  switch (which) {
    case 0: return levi_datum(build_root_system('A', 3), {});
    case 1: return levi_datum(build_root_system('B', 3), {});
    default: return levi_datum(build_root_system('D', 4), {1, 3});
  }
}

void BM_SchoutenKks(benchmark::State& state) {
  auto lv = levi_for(static_cast<int>(state.range(0)));
  Multivector v = kks(point_for(lv)).to_multivector();
  state.SetLabel(lv->parent->label());
  for (auto _ : state) benchmark::DoNotOptimize(schouten(v, v));
}
BENCHMARK(BM_SchoutenKks)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_SchoutenProjected(benchmark::State& state) {
  auto lv = levi_for(static_cast<int>(state.range(0)));
  Multivector v = kks(point_for(lv)).to_multivector();
  state.SetLabel(lv->parent->label());
  for (auto _ : state) benchmark::DoNotOptimize(schouten_projected(*lv, v, v));
}
BENCHMARK(BM_SchoutenProjected)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_InvariantBasis(benchmark::State& state) {
  auto lv = levi_datum(build_root_system('D', 4), {1, 3});
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(invariant_basis(*lv, k).dim());
}
BENCHMARK(BM_InvariantBasis)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Cohomology(benchmark::State& state) {
  auto lv = levi_datum(build_root_system('B', 3), {1, 2});
  InvariantBivector f = lambda_poisson(point_for(lv));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_dims(build_complex(f, 0)));
}
BENCHMARK(BM_Cohomology)->Unit(benchmark::kMillisecond);

void BM_PbwDims(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto pres = re_relations(standard_rmatrix(n, make_rational(5, 3)), ReConvention::SecondFactor);
  for (auto _ : state) benchmark::DoNotOptimize(pbw_dims(pres, 3));
}
BENCHMARK(BM_PbwDims)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_ClassifySweep(benchmark::State& state) {
  auto rs = build_root_system('D', 4);
  for (auto _ : state) {
    int good = 0;
    for (int mask = 0; mask < (1 << rs->rank) - 1; ++mask) {
      std::vector<int> g;
      for (int i = 0; i < rs->rank; ++i)
        if (mask & (1 << i)) g.push_back(i);
      good += classify_good_orbit(point_for(levi_datum(rs, g))).is_good;
    }
    benchmark::DoNotOptimize(good);
  }
}
BENCHMARK(BM_ClassifySweep)->Unit(benchmark::kMillisecond);

void BM_QuadraticF(benchmark::State& state) {
  auto rs = build_root_system('A', 2);
  for (auto _ : state) benchmark::DoNotOptimize(quadratic_f(rs).dimension);
}
BENCHMARK(BM_QuadraticF)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
