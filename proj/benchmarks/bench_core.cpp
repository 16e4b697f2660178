#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "relayrate/imeasure.hpp"
#include "relayrate/rate_region.hpp"
#include "relayrate/source_model.hpp"
#include "relayrate/storage.hpp"

using namespace relayrate;

namespace {

SourceModel component_model(int num_users, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> rate(0.0, 2.0);
  std::map<SubsetMask, double> bits;
  for (SubsetMask s = 1; s <= full_mask(num_users); ++s) bits[s] = rate(rng);
  return make_component(num_users, bits).to_model();
}

TabularPmf random_pmf(int num_users, int alphabet, unsigned seed) {
  std::mt19937 rng(seed);
  std::exponential_distribution<double> mass(1.0);
  long tuples = 1;
  for (int l = 0; l < num_users; ++l) tuples *= alphabet;
  TabularPmf pmf;
  pmf.alphabet_sizes.assign(num_users, alphabet);
  std::vector<double> weights(tuples);
  double total = 0.0;
  for (double& w : weights) {
    w = mass(rng);
    total += w;
  }
  for (long t = 0; t < tuples; ++t) {
    TabularPmf::Entry e;
    e.symbols.resize(num_users);
    long rest = t;
    for (int l = 0; l < num_users; ++l) {
      e.symbols[l] = static_cast<int>(rest % alphabet);
      rest /= alphabet;
    }
    e.p = weights[t] / total;
    pmf.entries.push_back(std::move(e));
  }
  return pmf;
}

void BM_TabularValidation(benchmark::State& state) {
  const TabularPmf pmf =
      random_pmf(static_cast<int>(state.range(0)), 3, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_tabular(pmf));
  }
}
BENCHMARK(BM_TabularValidation)->Arg(3)->Arg(5)->Arg(7);

void BM_AtomTable(benchmark::State& state) {
  const SourceModel m =
      component_model(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(atom_table(m));
  }
}
BENCHMARK(BM_AtomTable)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_SumRateLp(benchmark::State& state) {
  const SourceModel m =
      component_model(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_sum_rate(m));
  }
}
BENCHMARK(BM_SumRateLp)->Arg(3)->Arg(5)->Arg(7);

void BM_StorageReport(benchmark::State& state) {
  const SourceModel m =
      component_model(static_cast<int>(state.range(0)), 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_storage_rate(m));
  }
}
BENCHMARK(BM_StorageReport)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
