// Microbenchmarks for the hot paths: the spectrum-aware search at several
// occupancy levels, the candidate generators, and slice-set algebra.

#include <benchmark/benchmark.h>

#include <vector>

#include "eonsim/baselines.hpp"
#include "eonsim/rng.hpp"
#include "eonsim/routing.hpp"
#include "eonsim/topology.hpp"

namespace {

using namespace eonsim;

constexpr uint32_t kNodes = 100;
constexpr uint32_t kSlices = 400;

// One deterministic network per occupancy level, with random slots of
// realistic width marked busy until the requested fill is reached.
Graph loaded_network(double occupancy) {
  Rng rng(0xbe9c4);
  Graph g = gabriel_generate(kNodes, 1000.0, 1000.0, kSlices, rng);
  for (LinkId l = 0; l < g.num_links(); ++l) {
    SliceSet& pool = g.available(l);
    uint32_t busy = 0;
    const auto target = static_cast<uint32_t>(occupancy * kSlices);
    while (busy < target) {
      const uint32_t len = 1 + static_cast<uint32_t>(rng.below(16));
      const uint32_t start = static_cast<uint32_t>(rng.below(kSlices - len + 1));
      const Slot slot{start, len};
      if (!pool.contains_all(slot)) continue;
      pool.subtract(slot);
      busy += len;
    }
  }
  return g;
}

std::vector<Demand> demand_mix(const Graph& g, uint32_t count) {
  Rng rng(0xdeead);
  std::vector<Demand> out;
  out.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    const auto s = static_cast<NodeId>(rng.below(g.num_nodes()));
    auto t = static_cast<NodeId>(rng.below(g.num_nodes() - 1));
    if (t >= s) ++t;
    uint32_t n = 0;
    while (n == 0) n = rng.poisson(10.0);
    out.push_back(Demand{s, t, n});
  }
  return out;
}

void BM_search(benchmark::State& state) {
  const Graph g = loaded_network(static_cast<double>(state.range(0)) / 100.0);
  const auto demands = demand_mix(g, 256);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search(g, demands[i++ % demands.size()], 2000));
  }
}
BENCHMARK(BM_search)->Arg(0)->Arg(30)->Arg(55)->Unit(benchmark::kMicrosecond);

void BM_yen_ksp(benchmark::State& state) {
  const Graph g = loaded_network(0.0);
  const auto demands = demand_mix(g, 256);
  size_t i = 0;
  for (auto _ : state) {
    const Demand& d = demands[i++ % demands.size()];
    benchmark::DoNotOptimize(yen_ksp(g, d.source, d.target, 10));
  }
}
BENCHMARK(BM_yen_ksp)->Unit(benchmark::kMicrosecond);

void BM_edge_disjoint(benchmark::State& state) {
  const Graph g = loaded_network(0.0);
  const auto demands = demand_mix(g, 256);
  size_t i = 0;
  for (auto _ : state) {
    const Demand& d = demands[i++ % demands.size()];
    benchmark::DoNotOptimize(edge_disjoint_paths(g, d.source, d.target));
  }
}
BENCHMARK(BM_edge_disjoint)->Unit(benchmark::kMicrosecond);

void BM_sliceset_intersect_trim(benchmark::State& state) {
  Rng rng(0x5e75);
  SliceSet a(kSlices), b(kSlices);
  for (uint32_t i = 0; i < kSlices; ++i) {
    if (rng.uniform() < 0.6) a.insert(i);
    if (rng.uniform() < 0.6) b.insert(i);
  }
  SliceSet out(kSlices);
  for (auto _ : state) {
    out.assign_intersection(a, b);
    out.trim(10);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_sliceset_intersect_trim);

}  // namespace

BENCHMARK_MAIN();
