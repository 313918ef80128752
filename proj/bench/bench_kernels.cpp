// Serial versus OpenMP kernels on representative grids.
// Argument 0 selects the grid, argument 1 the execution mode (0 serial, 1 parallel).

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "starflow/kernels.hpp"
#include "starflow/sphere_grid.hpp"

using namespace starflow;

namespace {

GridPtr grid_for(int which) {
  switch (which) {
    case 0: return build_grid(GridMode::axisymmetric, 2, 1024);
    case 1: return build_grid(GridMode::full2d, 2, 64, 128);
    default: return build_grid(GridMode::full2d, 2, 128, 256);
  }
}

std::vector<double> smooth_field(const SphereGrid& g) {
  std::vector<double> v(g.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double t = g.theta(g.row_of(k));
    v[k] = 0.1 * std::cos(t);
    if (g.mode() == GridMode::full2d) v[k] += 0.05 * std::sin(t) * std::cos(g.phi(g.col_of(k)));
  }
  return v;
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_CovariantJet(benchmark::State& state) {
  const GridPtr g = grid_for(static_cast<int>(state.range(0)));
  const std::vector<double> rho = smooth_field(*g);
  std::vector<JetSample> out(g->size());
  for (auto _ : state) {
    covariant_jet(*g, rho, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g->size()));
}

void BM_FlowRhs(benchmark::State& state) {
  const GridPtr g = grid_for(static_cast<int>(state.range(0)));
  const std::vector<double> rho = smooth_field(*g);
  std::vector<double> rhs(g->size());
  std::vector<JetSample> scratch;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow_rhs(*g, rho, 2.0, true, rhs, scratch, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g->size()));
}

void BM_GeometryExtrema(benchmark::State& state) {
  const GridPtr g = grid_for(static_cast<int>(state.range(0)));
  const std::vector<double> rho = smooth_field(*g);
  for (auto _ : state) benchmark::DoNotOptimize(geometry_extrema(*g, rho, 2.0, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g->size()));
}

}  // namespace

BENCHMARK(BM_CovariantJet)->ArgsProduct({{0, 1, 2}, {0, 1}})->ArgNames({"grid", "parallel"});
BENCHMARK(BM_FlowRhs)->ArgsProduct({{0, 1, 2}, {0, 1}})->ArgNames({"grid", "parallel"});
BENCHMARK(BM_GeometryExtrema)->ArgsProduct({{0, 1, 2}, {0, 1}})->ArgNames({"grid", "parallel"});

BENCHMARK_MAIN();
