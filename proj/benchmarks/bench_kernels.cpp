#include <benchmark/benchmark.h>

#include "snewton/lattice.hpp"
#include "snewton/potential.hpp"
#include "snewton/propagator.hpp"

using namespace snewton;

namespace {

Lattice lattice_for(std::int64_t n) {
  return make_lattice(-70.0, 70.0, static_cast<std::size_t>(n), 10.0, 1000);
}

void potential(benchmark::State& state, PotentialMethod method) {
  const Lattice lattice = lattice_for(state.range(0));
  const WaveState psi = prepare_double_gaussian(lattice, SetupParams{});
  SelfPotentialEvaluator evaluator(lattice, 0.01, method);
  std::vector<double> out(lattice.n_points);
  for (auto _ : state) {
    evaluator.evaluate(psi.amplitudes, 0.25, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_PotentialDirect(benchmark::State& state) { potential(state, PotentialMethod::direct); }
void BM_PotentialFast(benchmark::State& state) { potential(state, PotentialMethod::fast); }

void BM_CrankNicolsonStep(benchmark::State& state) {
  const Lattice lattice = lattice_for(state.range(0));
  const WaveState psi = prepare_double_gaussian(lattice, SetupParams{});
  const std::vector<double> v(lattice.n_points, 0.0);
  std::vector<Complex> a = psi.amplitudes, b(lattice.n_points);
  CrankNicolsonStepper stepper(lattice, 0.5);
  for (auto _ : state) {
    stepper.step(a, v, b);
    std::swap(a, b);
    benchmark::DoNotOptimize(a.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_EvolveDefault(benchmark::State& state) {
  const Lattice lattice = default_lattice();
  SetupParams setup;
  StepScheme scheme;
  scheme.mode = state.range(0) ? CouplingMode::predictor_corrector : CouplingMode::frozen_potential;
  const WaveState psi = prepare_double_gaussian(lattice, setup);
  for (auto _ : state) {
    auto record = evolve(psi, setup, lattice, scheme, {8.9});
    benchmark::DoNotOptimize(record.energies.data());
  }
}

}  // namespace

BENCHMARK(BM_PotentialDirect)->RangeMultiplier(2)->Range(256, 4096)->Complexity();
BENCHMARK(BM_PotentialFast)->RangeMultiplier(2)->Range(256, 16384)->Complexity();
BENCHMARK(BM_CrankNicolsonStep)->RangeMultiplier(2)->Range(256, 16384)->Complexity();
BENCHMARK(BM_EvolveDefault)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
