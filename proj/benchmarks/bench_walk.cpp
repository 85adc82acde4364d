// Microbenchmarks for the hot paths: the level iteration, the circle scans
// behind every quadrature-based observable, the first-passage jet solve, and
// explicit lattice construction for the brute-force reference walks.
#include <benchmark/benchmark.h>

#include <complex>

#include "sgw/green.hpp"
#include "sgw/jet.hpp"
#include "sgw/lattice.hpp"
#include "sgw/observables.hpp"
#include "sgw/passage.hpp"
#include "sgw/quadrature.hpp"

namespace {

using C = std::complex<double>;

const C z_probe = std::polar(1.0, 2.0 * 3.14159265358979323846 * 0.3);

void bm_sextet_iterate(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  for (auto _ : state) {
    sgw::green_sextet<C> u = sgw::initial_sextet(z_probe);
    for (int n = 1; n < levels; ++n) u = sgw::iterate(u);
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * levels);
}
BENCHMARK(bm_sextet_iterate)->Arg(5)->Arg(15)->Arg(25);

void bm_sextet_iterate_jet(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  for (auto _ : state) {
    sgw::green_sextet<sgw::cjet> u = sgw::initial_sextet(sgw::cjet{z_probe, z_probe});
    for (int n = 1; n < levels; ++n) u = sgw::iterate(u);
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * levels);
}
BENCHMARK(bm_sextet_iterate_jet)->Arg(5)->Arg(15);

void bm_circle_scan(benchmark::State& state) {
  const auto grid = sgw::make_trapezoid_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto scan = sgw::sextet_on_circle(grid, 8);
    benchmark::DoNotOptimize(scan);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}
BENCHMARK(bm_circle_scan)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void bm_exit_distribution(benchmark::State& state) {
  const auto grid = sgw::make_trapezoid_grid(512);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto dist = sgw::quantum_exit_distribution(level, grid);
    benchmark::DoNotOptimize(dist);
  }
}
BENCHMARK(bm_exit_distribution)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_passage_blocks_jet(benchmark::State& state) {
  const sgw::cjet z{z_probe, z_probe};
  const sgw::quantum_kernel<sgw::cjet> kernel{
      sgw::sextet_at_level(z, static_cast<int>(state.range(0)))};
  for (auto _ : state) {
    auto blocks = sgw::first_passage_blocks(kernel);
    benchmark::DoNotOptimize(blocks);
  }
}
BENCHMARK(bm_passage_blocks_jet)->Arg(0)->Arg(4);

void bm_lattice_build(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto g = sgw::gasket::build_level(level);
    benchmark::DoNotOptimize(g);
  }
  state.SetItemsProcessed(state.iterations() *
                          (2 * sgw::gasket::sites_per_copy(level) - 1));
}
BENCHMARK(bm_lattice_build)->Arg(3)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
