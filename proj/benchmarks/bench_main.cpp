#include <benchmark/benchmark.h>

#include "rtlab/constructions.hpp"
#include "rtlab/sphere.hpp"
#include "rtlab/verifiers.hpp"

using namespace rtlab;

namespace {

SimpleGraph gnp(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) e.emplace_back(u, v);
  return SimpleGraph::from_edges(n, std::move(e));
}

void BM_FindClique(benchmark::State& state) {
  const SimpleGraph g = gnp(static_cast<std::size_t>(state.range(0)), 0.5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(find_clique(g, 8, SearchBudget::unlimited()));
}
BENCHMARK(BM_FindClique)->Arg(60)->Arg(120)->Arg(200);

void BM_BollobasErdosK4(benchmark::State& state) {
  const auto z = static_cast<std::size_t>(state.range(0));
  const SpherePartition p = build_partition(5, z, 0.5 / std::sqrt(5.0), 1);
  const SimpleGraph g = bollobas_erdos(p, 0.5, 5);
  for (auto _ : state) benchmark::DoNotOptimize(find_clique(g, 4, SearchBudget::unlimited()));
}
BENCHMARK(BM_BollobasErdosK4)->Arg(50)->Arg(150);

void BM_SplitCore(benchmark::State& state) {
  const auto params = ConstructionParams::make(3, static_cast<std::size_t>(state.range(0)), 0.75, 10, 1, 0.3, 1);
  const SphereHypergraph sh = sphere_hypergraph(params, build_partition(params.k, params.z, params.theta, 1));
  for (auto _ : state) benchmark::DoNotOptimize(scan_split_core(sh.hypergraph, SearchBudget::unlimited()));
  state.counters["edges"] = static_cast<double>(sh.hypergraph.num_edges());
}
BENCHMARK(BM_SplitCore)->Arg(30)->Arg(50);

void BM_CapMeasure(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  double s = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cap_measure(k, s));
    s = s > 0.9 ? -0.9 : s + 0.01;
  }
}
BENCHMARK(BM_CapMeasure)->Arg(2)->Arg(10)->Arg(200);

void BM_SparseScan(benchmark::State& state) {
  const auto params = ConstructionParams::make(3, 50, 0.75, 10, 5, 0.3, 1);
  const SphereHypergraph sh = sphere_hypergraph(params, build_partition(params.k, params.z, params.theta, 1));
  const Hypergraph inside = sh.hypergraph.filter([&](EdgeId e) { return sh.hypergraph.is_inside(e); });
  const Hypergraph blown = random_blowup(inside, 5, 0.3, 9, 1, SearchBudget::unlimited()).hypergraph;
  for (auto _ : state)
    benchmark::DoNotOptimize(scan_sparse_patterns(blown, static_cast<int>(state.range(0)), SearchBudget::unlimited()));
  state.counters["edges"] = static_cast<double>(blown.num_edges());
}
BENCHMARK(BM_SparseScan)->Arg(6)->Arg(9);

}  // namespace

BENCHMARK_MAIN();
