#include <benchmark/benchmark.h>

#include <memory>
#include <numbers>

#include "spinring/disorder.hpp"
#include "spinring/hamiltonian.hpp"
#include "spinring/propagator.hpp"
#include "spinring/sector_basis.hpp"
#include "spinring/spectral.hpp"

namespace {

using namespace spinring;
constexpr double kPi = std::numbers::pi;

MultiSectorState single_site(int n_sites) {
  return realize_state({{{cplx(1.0), {0}}}}, n_sites).state;
}

DisorderRealization eta_delta(int n_sites) {
  DisorderSpec spec;
  spec.eta = GaussianDisorder{0.2};
  spec.delta = GaussianDisorder{0.2};
  return sample_disorder(spec, n_sites, 11);
}

// Args: N, n.
void BM_SectorBasis(benchmark::State& state) {
  const int n_sites = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(make_sector_basis(n_sites, n));
  state.counters["dim"] = static_cast<double>(make_sector_basis(n_sites, n)->dimension());
}
BENCHMARK(BM_SectorBasis)->Args({201, 1})->Args({201, 2})->Args({24, 6})->Unit(benchmark::kMicrosecond);

void BM_SectorOperator(benchmark::State& state) {
  const int n_sites = static_cast<int>(state.range(0));
  const auto basis = make_sector_basis(n_sites, static_cast<int>(state.range(1)));
  const RingSpec ring{n_sites, 2.0, 1.0, 1.0};
  const auto disorder = eta_delta(n_sites);
  for (auto _ : state) {
    const auto op = std::make_shared<const SectorOperator>(ring, disorder, basis);
    benchmark::DoNotOptimize(SectorHamiltonian(op, 0.3).matrix().nonZeros());
  }
  state.counters["dim"] = static_cast<double>(basis->dimension());
}
BENCHMARK(BM_SectorOperator)->Args({201, 2})->Args({24, 6})->Unit(benchmark::kMillisecond);

void BM_DenseEigensolve(benchmark::State& state) {
  const int n_sites = static_cast<int>(state.range(0));
  const RingSpec ring{n_sites, 2.0, 1.0, 1.0};
  const auto h = build_hamiltonian(ring, eta_delta(n_sites), 0.3,
                                   make_sector_basis(n_sites, static_cast<int>(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(SpectralDecomposition::dense(h));
  state.counters["dim"] = static_cast<double>(h.dimension());
}
BENCHMARK(BM_DenseEigensolve)->Args({201, 1})->Args({12, 3})->Args({12, 6})->Unit(benchmark::kMillisecond);

void BM_MomentumEigensolve(benchmark::State& state) {
  const int n_sites = static_cast<int>(state.range(0));
  const RingSpec ring{n_sites, 2.0, 1.0, 1.0};
  const auto h = build_hamiltonian(ring, no_disorder(n_sites), 0.3,
                                   make_sector_basis(n_sites, static_cast<int>(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(SpectralDecomposition::momentum(h));
  state.counters["dim"] = static_cast<double>(h.dimension());
}
BENCHMARK(BM_MomentumEigensolve)->Args({201, 1})->Args({12, 6})->Args({60, 2})->Unit(benchmark::kMillisecond);

// Step-periodic revival run: N sites, 50 periods of 2 pi, 600 samples.
void BM_PiecewiseEvolve(benchmark::State& state) {
  const int n_sites = static_cast<int>(state.range(0));
  const bool disordered = state.range(1) != 0;
  const RingSpec ring{n_sites, 2.0, 1.0, 1.0};
  const auto disorder = disordered ? eta_delta(n_sites) : no_disorder(n_sites);
  const auto initial = single_site(n_sites);
  const auto plan = uniform_plan(StepPeriodicPhase{kPi / 2, 2 * kPi}, 100 * kPi, 600);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_piecewise(initial, ring, disorder, plan));
}
BENCHMARK(BM_PiecewiseEvolve)->Args({201, 0})->Args({201, 1})->Unit(benchmark::kMillisecond);

// Truncated-Fourier drive through the midpoint integrator, automatic step.
void BM_IntegratorEvolve(benchmark::State& state) {
  const int n_sites = 41;
  const RingSpec ring{n_sites, 2.0, 1.0, 1.0};
  const auto initial = single_site(n_sites);
  const auto plan =
      uniform_plan(FourierTruncatedPhase{kPi / 2, 2 * kPi, static_cast<int>(state.range(0))}, 10 * kPi, 200);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_continuous(initial, ring, no_disorder(n_sites), plan));
}
BENCHMARK(BM_IntegratorEvolve)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
