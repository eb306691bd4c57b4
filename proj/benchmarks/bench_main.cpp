// Microbenchmarks for the hot paths: profile evaluation, potential fills,
// and the finite-difference spectral layer.

#include <benchmark/benchmark.h>

#include "isospec/families.hpp"
#include "isospec/grid.hpp"
#include "isospec/hydrogen.hpp"
#include "isospec/seeds.hpp"
#include "isospec/verify.hpp"

namespace {

using namespace isospec;

void BM_phi_eval(benchmark::State& state) {
  const auto seed = make_seed(2, -1, 2.0);
  double r = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi(seed, r).value);
    r = r < 80.0 ? r + 0.37 : 0.5;
  }
}
BENCHMARK(BM_phi_eval);

void BM_potential_fill_order1(benchmark::State& state) {
  const auto pot = family_potential(FamilySpec{2, {{-1, 2.0}}});
  const RadialGrid grid(1e-3, 120.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < grid.n_points; ++i) acc += pot.evaluator(grid.point(i));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * grid.n_points);
}
BENCHMARK(BM_potential_fill_order1)->Arg(10000)->Arg(60000);

void BM_potential_fill_order2(benchmark::State& state) {
  const auto pot = family_potential(FamilySpec{4, {{-3, -0.5}, {0, 0.5}}});
  const RadialGrid grid(1e-3, 120.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < grid.n_points; ++i) acc += pot.evaluator(grid.point(i));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * grid.n_points);
}
BENCHMARK(BM_potential_fill_order2)->Arg(10000)->Arg(60000);

void BM_sturm_count(benchmark::State& state) {
  const RadialGrid grid(1e-3, 120.0, static_cast<int>(state.range(0)));
  const auto op = discretize([](double r) { return coulomb_potential(2, r); }, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalue_count_below(op, -0.05));
  }
  state.SetItemsProcessed(state.iterations() * grid.n_points);
}
BENCHMARK(BM_sturm_count)->Arg(60000)->Arg(300000);

void BM_lowest_eigenvalues(benchmark::State& state) {
  const RadialGrid grid(1e-3, 120.0, 60001);
  const auto op = discretize([](double r) { return coulomb_potential(2, r); }, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowest_eigenvalues(op, 3));
  }
}
BENCHMARK(BM_lowest_eigenvalues);

}  // namespace

BENCHMARK_MAIN();
