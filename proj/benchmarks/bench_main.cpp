#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "algebroid/branchlab.hpp"
#include "algebroid/nevan.hpp"
#include "algebroid/polyalg.hpp"
#include "algebroid/presets.hpp"

using namespace algebroid;

namespace {

CPoly random_poly(int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  return CPoly(c);
}

AlgebroidEquation random_equation(int nu, int degree, std::uint64_t seed) {
  std::vector<CPoly> a;
  for (int j = 0; j <= nu; ++j) a.push_back(random_poly(degree, seed * 31 + static_cast<std::uint64_t>(j)));
  return AlgebroidEquation(a);
}

void BM_SolveRoots(benchmark::State& state) {
  const CPoly p = random_poly(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_roots(p));
}
BENCHMARK(BM_SolveRoots)->Arg(4)->Arg(16)->Arg(64);

void BM_Discriminant(benchmark::State& state) {
  const auto eq = random_equation(static_cast<int>(state.range(0)), 5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(discriminant(eq));
}
BENCHMARK(BM_Discriminant)->DenseRange(2, 4);

void BM_Monodromy(benchmark::State& state) {
  const auto eq = preset_equation("sqrt-quartic");
  MonodromyOptions opts;
  opts.parallel = false;
  for (auto _ : state) benchmark::DoNotOptimize(monodromy(eq, Disc{0.0, 3.0}, 1, opts));
}
BENCHMARK(BM_Monodromy)->Unit(benchmark::kMillisecond);

void BM_Proximity(benchmark::State& state) {
  const auto eq = preset_equation("sqrt-quartic");
  const DomainModel plane(DomainKind::kEuclidean);
  NevanOptions opts;
  opts.n_theta = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(proximity(eq, plane, SpherePoint::at_infinity(), std::exp(3.0), opts));
}
BENCHMARK(BM_Proximity)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
