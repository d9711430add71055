#include <benchmark/benchmark.h>

#include "evac/engine.hpp"
#include "evac/junction_solver.hpp"
#include "evac/lahaina.hpp"
#include "evac/toy.hpp"

namespace {

void bm_riemann_flux(benchmark::State& state) {
  const evac::NormalizedFlux f = evac::build_flux(35, 875, 200, 2);
  double rho = 0.0;
  for (auto _ : state) {
    rho += 1e-4;
    if (rho > 1.9) rho = 0.0;
    benchmark::DoNotOptimize(evac::riemann_flux(f, rho, 1.9 - rho));
  }
}
BENCHMARK(bm_riemann_flux);

void bm_junction_resolve(benchmark::State& state) {
  evac::JunctionProblem p;
  p.c_in = {4, 5};
  p.c_out = {3, 6};
  p.dist = {{0.4, 0.6}, {0.6, 0.4}};
  for (auto _ : state) benchmark::DoNotOptimize(evac::resolve(p));
}
BENCHMARK(bm_junction_resolve);

void bm_toy_step(benchmark::State& state) {
  evac::ToyParams params;
  evac::Network net = evac::build_toy_network(params, evac::ToyExperiment::D);
  net.discretize(1.0 / state.range(0));
  evac::Engine engine(net);
  const double dt = engine.cfl_dt();
  for (auto _ : state) engine.step(dt);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_toy_step)->Arg(100)->Arg(400);

void bm_lahaina_step(benchmark::State& state) {
  evac::Network net = evac::build_lahaina_network(evac::LahainaNetwork::AmBase);
  net.discretize(0.02);
  evac::assign_weights(net);
  evac::Engine engine(net);
  const double dt = engine.cfl_dt();
  for (auto _ : state) engine.step(dt);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_lahaina_step);

}  // namespace

BENCHMARK_MAIN();
