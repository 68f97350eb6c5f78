// Benchmarks for the paths that dominate real workloads: the per-triplet
// measure battery, the lattice decomposition, packed-raster counting, and
// the full sweep.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mvinfo/distribution.hpp"
#include "mvinfo/measure_set.hpp"
#include "mvinfo/measures.hpp"
#include "mvinfo/netgen.hpp"
#include "mvinfo/pid.hpp"
#include "mvinfo/spikes.hpp"

using namespace mvinfo;

namespace {

DiscreteDistribution random_distribution(std::mt19937_64& gen,
                                         std::size_t n_vars,
                                         Symbol alphabet) {
  std::vector<std::string> names;
  std::vector<Symbol> alphabets(n_vars, alphabet);
  for (std::size_t i = 0; i < n_vars; ++i)
    names.push_back("v" + std::to_string(i));

  std::size_t cells = 1;
  for (std::size_t i = 0; i < n_vars; ++i) cells *= alphabet;
  std::exponential_distribution<double> mass(1.0);
  std::vector<double> weights(cells);
  double total = 0.0;
  for (double& w : weights) {
    w = mass(gen) + 1e-6;
    total += w;
  }

  std::vector<std::pair<State, double>> pmf;
  for (std::size_t c = 0; c < cells; ++c) {
    State s(n_vars);
    std::size_t rest = c;
    for (std::size_t i = n_vars; i-- > 0;) {
      s[i] = static_cast<Symbol>(rest % alphabet);
      rest /= alphabet;
    }
    pmf.emplace_back(std::move(s), weights[c] / total);
  }
  return DiscreteDistribution(names, alphabets, pmf);
}

SpikeRaster random_raster(std::size_t channels, std::size_t bins,
                          double fill) {
  std::vector<int> ids;
  for (std::size_t c = 0; c < channels; ++c)
    ids.push_back(static_cast<int>(c + 1));
  SpikeRaster raster(ids, 0.016, bins);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 0; c < channels; ++c)
    for (std::size_t t = 0; t < bins; ++t)
      if (unit(gen) < fill) raster.set_cell(c, t, true);
  return raster;
}

void BM_FullBattery_BinaryTriplet(benchmark::State& state) {
  std::mt19937_64 gen(1);
  auto d = random_distribution(gen, 3, 2);
  SourceTargetSplit split{IndexSet{0, 1}, 2};
  MeasureSet battery = MeasureSet::all(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(battery.evaluate(d, split));
}
BENCHMARK(BM_FullBattery_BinaryTriplet);

void BM_Decompose_TwoSources(benchmark::State& state) {
  std::mt19937_64 gen(2);
  auto d = random_distribution(gen, 3, 3);
  SourceTargetSplit split{IndexSet{0, 1}, 2};
  for (auto _ : state) benchmark::DoNotOptimize(decompose(d, split));
}
BENCHMARK(BM_Decompose_TwoSources);

void BM_Decompose_ThreeSources(benchmark::State& state) {
  std::mt19937_64 gen(3);
  auto d = random_distribution(gen, 4, 3);
  SourceTargetSplit split{IndexSet{0, 1, 2}, 3};
  for (auto _ : state) benchmark::DoNotOptimize(decompose(d, split));
}
BENCHMARK(BM_Decompose_ThreeSources);

void BM_TripletDistribution(benchmark::State& state) {
  auto raster = random_raster(3, static_cast<std::size_t>(state.range(0)),
                              0.05);
  for (auto _ : state)
    benchmark::DoNotOptimize(triplet_distribution(raster, 1, 2, 3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TripletDistribution)->Arg(100000)->Arg(1000000);

void BM_RotationShuffle(benchmark::State& state) {
  auto raster = random_raster(30, 100000, 0.05);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(rotation_shuffle(raster, ++seed));
}
BENCHMARK(BM_RotationShuffle);

void BM_TripletSweep(benchmark::State& state) {
  auto raster =
      random_raster(static_cast<std::size_t>(state.range(0)), 20000, 0.05);
  MeasureSet battery = MeasureSet::all(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(triplet_sweep(raster, battery));
}
BENCHMARK(BM_TripletSweep)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_NetworkSweep(benchmark::State& state) {
  NetworkParams params{0.02, 0.1, 0.3, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(params));
}
BENCHMARK(BM_NetworkSweep);

}  // namespace

BENCHMARK_MAIN();
