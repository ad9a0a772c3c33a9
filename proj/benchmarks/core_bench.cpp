#include <benchmark/benchmark.h>

#include <vector>

#include "cslattice/dynamics.hpp"
#include "cslattice/exact.hpp"
#include "cslattice/observables.hpp"

namespace {

using namespace cslattice;

GdstParams ring(int f, Ordering ordering) {
  GdstParams p;
  p.gamma = 0.05;
  p.m = 3;
  p.ordering = ordering;
  p.coupling = nearest_neighbor_ring(f, 1.0);
  return p;
}

void BM_GdstRhs(benchmark::State& state) {
  const int f = static_cast<int>(state.range(0));
  const auto params = ring(f, Ordering::kSymmetric);
  const auto rhs = make_rhs(params);
  std::vector<Complex> y(static_cast<std::size_t>(f), Complex(0.7, -0.2)), out(y.size());
  for (auto _ : state) {
    rhs(y, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * f);
}
BENCHMARK(BM_GdstRhs)->Arg(3)->Arg(21)->Arg(64);

void BM_IntegrateTrimer(benchmark::State& state) {
  const auto params = ring(3, Ordering::kSymmetric);
  const auto state0 = single_site_excitation(3, Site(1), 10.0);
  const auto cfg = IntegratorConfig::uniform(static_cast<double>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(params, state0, cfg).size());
}
BENCHMARK(BM_IntegrateTrimer)->Arg(50)->Arg(260)->Unit(benchmark::kMillisecond);

void BM_SpectralPropagator(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  const auto basis = enumerate_basis(2, n_max);
  const auto h = build_gdst_hamiltonian(ring(2, Ordering::kNormal), basis);
  const auto psi0 = coherent_product_state(BosonLatticeState({2.0, 0.0}), basis, 1e-2).state;
  const SpectralPropagator prop(h);
  for (auto _ : state) benchmark::DoNotOptimize(prop.evolve(psi0, 10.0).norm());
}
BENCHMARK(BM_SpectralPropagator)->Arg(10)->Arg(20)->Arg(40);

void BM_PropagatorSetup(benchmark::State& state) {
  const auto basis = enumerate_basis(2, static_cast<int>(state.range(0)));
  const auto h = build_gdst_hamiltonian(ring(2, Ordering::kNormal), basis);
  for (auto _ : state) {
    const SpectralPropagator prop(h);
    benchmark::DoNotOptimize(&prop);
  }
}
BENCHMARK(BM_PropagatorSetup)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_QFunctionDefaultGrid(benchmark::State& state) {
  const Complex beta(2.0, -1.0);
  for (auto _ : state) benchmark::DoNotOptimize(q_function(beta).integral());
}
BENCHMARK(BM_QFunctionDefaultGrid)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
