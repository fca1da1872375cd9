#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "rtlab/constructions.hpp"
#include "rtlab/sparse_scan.hpp"
#include "rtlab/verifiers.hpp"
#include "support/oracles.hpp"

using namespace rtlab;

namespace {

const double kSqrt2 = std::sqrt(2.0);

ConstructionParams small_params(int r = 3, std::size_t z = 20, std::uint64_t seed = 1) {
  return ConstructionParams::make(r, z, 0.5, 10, 3, 0.3, seed);
}

SpherePartition partition_of(const ConstructionParams& p) {
  return build_partition(p.k, p.z, p.theta, derive_seed(p.seed, "partition"));
}

double d(const SpherePartition& p, std::uint32_t a, std::uint32_t b) { return distance(p.reps[a], p.reps[b]); }

}  // namespace

TEST_CASE("construction parameters") {
  const auto p = ConstructionParams::make(3, 20, 0.5, 16, 3, 0.3, 7);
  CHECK(p.theta == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(p.u == 2);
  CHECK(p.pattern_cap == 27);
  CHECK(ConstructionParams::make(4, 20, 0.5, 16, 3, 0.3, 7).u == 2);
  CHECK(ConstructionParams::make(5, 20, 0.5, 16, 3, 0.3, 7).u == 3);
  CHECK_NOTHROW(p.validate());
  CHECK(p.blowup_probability() == doctest::Approx(std::pow(3.0, 1.3 - 3)));

  auto bad = p;
  bad.gamma = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.theta = 0.2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.u = 3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("Bollobas-Erdos graph, edge rules") {
  const SpherePartition one = build_partition(3, 1, 0.1, 1);
  const SimpleGraph g1 = bollobas_erdos(one, 0.5, 25);
  CHECK(g1.num_vertices() == 2);
  CHECK(g1.num_edges() == 1);
  CHECK(g1.adjacent(0, 1));

  const SpherePartition p = build_partition(4, 30, 0.1, 2);
  const SimpleGraph none = bollobas_erdos(p, 3.0, 4);  // theta = 1.5 >= sqrt2
  for (const auto& [u, v] : none.edges()) CHECK(none.part(u) == none.part(v));

  const double eps = 0.5;
  const int k = 4;
  const double theta = eps / std::sqrt(static_cast<double>(k));
  const SimpleGraph g = bollobas_erdos(p, eps, k);
  for (Vertex u = 0; u < 60; ++u)
    for (Vertex v = u + 1; v < 60; ++v) {
      const double dist = d(p, u % 30, v % 30);
      const bool same = (u < 30) == (v < 30);
      CHECK(g.adjacent(u, v) == (same ? dist >= 2 - theta : dist <= kSqrt2 - theta));
    }
}

TEST_CASE("Bollobas-Erdos cross degrees") {
  const EpsK e = find_eps_k(0.2, 0.2, 2);
  const std::size_t z = 100;
  const SpherePartition p = build_partition(e.k, z, e.theta, 5);
  const SimpleGraph g = bollobas_erdos(p, e.epsilon, e.k);
  for (Vertex v = 0; v < 2 * z; ++v) {
    std::size_t cross = 0;
    for (Vertex w : g.neighbors(v)) cross += g.part(w) != g.part(v) ? 1 : 0;
    CHECK(static_cast<double>(cross) >= (0.5 - 0.25) * static_cast<double>(z));
  }
}

TEST_CASE("Bollobas-Erdos graph has no K4 and triangle-free sides") {
  const EpsK e = find_eps_k(0.3, 0.3, 2);
  const SpherePartition p = build_partition(e.k, 60, e.theta, 3);
  const SimpleGraph g = bollobas_erdos(p, e.epsilon, e.k);
  CHECK_FALSE(find_clique(g, 4).found());
  for (int side = 0; side < 2; ++side) {
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (g.part(v) == side) vs.push_back(v);
    CHECK_FALSE(find_clique(g.induced(vs), 3).found());
  }
}

TEST_CASE("tuple vertices") {
  const SpherePartition p = build_partition(2, 10, 0.1, 6);
  CHECK(tuple_vertices(p, 1, 0.1).size() == 10);
  const auto diag = tuple_vertices(p, 2, 1.414);
  CHECK(diag.size() == 10);
  for (const auto& t : diag) CHECK(t[0] == t[1]);

  std::vector<TupleVertex> brute;
  for (std::uint32_t a = 0; a < 10; ++a)
    for (std::uint32_t b = 0; b < 10; ++b)
      if (d(p, a, b) <= kSqrt2 - 0.1) brute.push_back({a, b});
  CHECK(tuple_vertices(p, 2, 0.1) == brute);
}

TEST_CASE("sphere hypergraph with r = 2 is the Bollobas-Erdos graph") {
  auto params = ConstructionParams::make(2, 25, 0.5, 6, 2, 0.3, 3);
  const SpherePartition p = partition_of(params);
  const SphereHypergraph sh = sphere_hypergraph(params, p);
  const SimpleGraph be = bollobas_erdos(p, params.epsilon, params.k);
  REQUIRE(sh.hypergraph.num_vertices() == be.num_vertices());
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (EdgeId e = 0; e < sh.hypergraph.num_edges(); ++e)
    edges.emplace_back(sh.hypergraph.edge(e)[0], sh.hypergraph.edge(e)[1]);
  CHECK(edges == be.edges());
}

TEST_CASE("sphere hypergraph edges recheck pair by pair") {
  const auto params = small_params();
  const SpherePartition p = partition_of(params);
  const SphereHypergraph sh = sphere_hypergraph(params, p);
  const auto& h = sh.hypergraph;
  const auto nv = sh.tuples.size();
  const double th = params.theta;
  CHECK(h.num_vertices() == 3 * nv);
  std::size_t cross = 0, inside = 0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto ed = h.edge(e);
    if (h.is_cross(e)) {
      ++cross;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          for (auto a : sh.tuples[ed[static_cast<std::size_t>(i)] % nv])
            for (auto b : sh.tuples[ed[static_cast<std::size_t>(j)] % nv]) CHECK(d(p, a, b) <= kSqrt2 - th);
    } else {
      REQUIRE(h.is_inside(e));
      ++inside;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          const auto& x = sh.tuples[ed[static_cast<std::size_t>(i)] % nv];
          const auto& y = sh.tuples[ed[static_cast<std::size_t>(j)] % nv];
          bool far = false;
          for (std::size_t c = 0; c < x.size(); ++c) far = far || d(p, x[c], y[c]) >= 2 - th;
          CHECK(far);
        }
    }
  }
  CHECK(cross == sh.info.base_cross);
  CHECK(inside == sh.info.base_inside);
  CHECK(sh.info.tuples_per_part == nv);
}

TEST_CASE("sphere hypergraph, no inside edges when theta >= 2") {
  auto params = ConstructionParams::make(3, 12, 2 * std::sqrt(4.0), 4, 2, 0.3, 1);
  const SphereHypergraph sh = sphere_hypergraph(params, partition_of(params));
  CHECK(sh.info.base_inside == 0);
}

TEST_CASE("cross edges are antitone in theta") {
  auto lo = ConstructionParams::make(3, 15, 0.4, 10, 2, 0.3, 4);
  auto hi = ConstructionParams::make(3, 15, 0.6, 10, 2, 0.3, 4);
  const SpherePartition p = build_partition(10, 15, lo.theta, 77);
  const auto a = sphere_hypergraph(lo, p), b = sphere_hypergraph(hi, p);
  auto cross_tuples = [](const SphereHypergraph& s) {
    std::set<std::vector<TupleVertex>> out;
    const auto nv = s.tuples.size();
    for (EdgeId e = 0; e < s.hypergraph.num_edges(); ++e) {
      if (!s.hypergraph.is_cross(e)) continue;
      std::vector<TupleVertex> ts;
      for (Vertex v : s.hypergraph.edge(e)) ts.push_back(s.tuples[v % nv]);
      out.insert(ts);
    }
    return out;
  };
  const auto ca = cross_tuples(a), cb = cross_tuples(b);
  CHECK(std::includes(ca.begin(), ca.end(), cb.begin(), cb.end()));
}

TEST_CASE("sampled mode reports estimates") {
  const auto params = small_params(3, 15);
  SphereHypergraphOptions opt;
  opt.sampled = true;
  opt.samples = 20'000;
  const SphereHypergraph exact = sphere_hypergraph(params, partition_of(params));
  const SphereHypergraph sampled = sphere_hypergraph(params, partition_of(params), opt);
  CHECK(sampled.info.sampled);
  CHECK(std::abs(sampled.info.cross_estimate.value - static_cast<double>(exact.info.base_cross)) <=
        4 * sampled.info.cross_estimate.half_width + 1);

  SphereHypergraphOptions capped;
  capped.vertex_cap = 10;
  CHECK_THROWS_AS(sphere_hypergraph(params, partition_of(params), capped), std::length_error);
}

TEST_CASE("random blowup") {
  CHECK(random_blowup(Hypergraph(6, 3), 3, 0.3, 9, 1).hypergraph.num_edges() == 0);
  CHECK(std::pow(100.0, 1 + 0.1 - 3) == doctest::Approx(std::pow(100.0, -1.9)));
  CHECK(ConstructionParams::make(3, 10, 0.5, 10, 100, 0.1, 1).blowup_probability() ==
        doctest::Approx(std::pow(100.0, -1.9)));

  Rng rng(3);
  const Hypergraph inside = oracle::random_hypergraph(7, 3, 0.25, rng);
  const RandomBlowup a = random_blowup(inside, 4, 0.3, 9, 11), b = random_blowup(inside, 4, 0.3, 9, 11);
  CHECK(a.hypergraph == b.hypergraph);
  CHECK(a.p == doctest::Approx(std::pow(4.0, 1.3 - 3)));
  CHECK(a.kept_before_deletion - a.deletions == a.hypergraph.num_edges());
  CHECK_FALSE(oracle::sparse_violation_growth(a.hypergraph, 9));
  CHECK_FALSE(scan_sparse_patterns(a.hypergraph, 9).found());
}

TEST_CASE("random blowup kept fraction") {
  Rng rng(5);
  const Hypergraph inside = oracle::random_hypergraph(8, 3, 0.3, rng);
  const int t = 4;
  const double p = std::pow(static_cast<double>(t), 1.3 - 3);
  const double trials = static_cast<double>(inside.num_edges()) * t * t * t;
  double sum = 0;
  const int seeds = 50;
  for (int s = 0; s < seeds; ++s)
    sum += static_cast<double>(random_blowup(inside, t, 0.3, 9, static_cast<std::uint64_t>(s)).kept_before_deletion);
  const double mean = sum / (seeds * trials);
  const double sigma = std::sqrt(p * (1 - p) / (seeds * trials));
  CHECK(std::abs(mean - p) <= 3 * sigma);
}

TEST_CASE("full construction") {
  const auto params = small_params(3, 14, 2);
  const SpherePartition p = partition_of(params);
  const SphereHypergraph base = sphere_hypergraph(params, p);
  const FullConstruction f = full_construction(params, p);
  std::size_t cross = 0;
  for (EdgeId e = 0; e < f.hypergraph.num_edges(); ++e) cross += f.hypergraph.is_cross(e) ? 1 : 0;
  CHECK(cross == 27 * base.info.base_cross);
  CHECK(f.info.part_size == 3 * base.info.tuples_per_part);
  CHECK(f.hypergraph.num_vertices() == 3 * f.info.part_size);
  CHECK_FALSE(scan_split_core(f.hypergraph).found());
}

TEST_CASE("full construction with t = 1 keeps inside edges minus deletions") {
  auto params = small_params(3, 12, 3);
  params.blowup_t = 1;
  const SpherePartition p = partition_of(params);
  const SphereHypergraph base = sphere_hypergraph(params, p);
  const FullConstruction f = full_construction(params, p);
  CHECK(f.info.blowup_p == 1.0);
  CHECK(f.info.inside_blown_kept == base.info.base_inside);
  CHECK(f.hypergraph.num_edges() == base.hypergraph.num_edges() - f.info.pattern_deletions);
}

TEST_CASE("shadow of the first parts") {
  const auto params = small_params(3, 12, 4);
  const FullConstruction f = full_construction(params);
  const SimpleGraph all = shadow_first_parts(f.hypergraph, 3);
  CHECK(all == shadow(f.hypergraph));
  const SimpleGraph part0 = shadow_first_parts(f.hypergraph, 1);
  const std::size_t m = f.info.part_size;
  CHECK(part0.num_vertices() == m);
  for (EdgeId e = 0; e < f.hypergraph.num_edges(); ++e) {
    const auto ed = f.hypergraph.edge(e);
    if (f.hypergraph.is_inside(e) && f.hypergraph.part(ed[0]) == 0) {
      CHECK(part0.adjacent(ed[0], ed[1]));
      CHECK(part0.adjacent(ed[0], ed[2]));
      CHECK(part0.adjacent(ed[1], ed[2]));
    }
  }
  const SimpleGraph two = shadow_first_parts(f.hypergraph, 2);
  for (Vertex v = 0; v < two.num_vertices(); ++v) CHECK(two.part(v) < 2);
  CHECK_THROWS_AS(shadow_first_parts(f.hypergraph, 0), std::invalid_argument);
  CHECK_THROWS_AS(shadow_first_parts(f.hypergraph, 4), std::invalid_argument);
}

TEST_CASE("covering trees cover K_r") {
  for (int r = 2; r <= 9; ++r) {
    const int u = (r + 1) / 2;
    const auto trees = covering_trees(r, u);
    CHECK(trees.size() == static_cast<std::size_t>(u));
    std::set<std::pair<int, int>> covered;
    for (const auto& tree : trees) {
      CHECK(tree.size() == static_cast<std::size_t>(r - 1));
      // spanning: union-find over the tree edges
      std::vector<int> parent(static_cast<std::size_t>(r));
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
      for (auto [a, b] : tree) {
        parent[static_cast<std::size_t>(find(a))] = find(b);
        covered.insert({std::min(a, b), std::max(a, b)});
      }
      for (int v = 0; v < r; ++v) CHECK(find(v) == find(0));
    }
    CHECK(covered.size() == static_cast<std::size_t>(r * (r - 1) / 2));
  }
}

TEST_CASE("greedy K_{t+1}-free provider") {
  Rng rng(2);
  const SimpleGraph g = greedy_kfree_provider(2)(12, rng);
  CHECK_FALSE(find_clique(g, 3).found());
  // maximal: every non-edge closes a triangle
  for (Vertex u = 0; u < 12; ++u)
    for (Vertex v = u + 1; v < 12; ++v) {
      if (g.adjacent(u, v)) continue;
      bool closes = false;
      for (Vertex w : g.neighbors(u)) closes = closes || g.adjacent(w, v);
      CHECK(closes);
    }
}

TEST_CASE("corollary graph") {
  const SimpleGraph g = SimpleGraph::from_edges(6, {{0, 1}, {1, 2}, {3, 4}});
  auto empty = [](std::size_t n, Rng&) { return SimpleGraph(n); };
  const CorollaryGraph one = corollary_graph(g, 2, 2, Rational(1, 2), empty, 1);
  CHECK(one.class_sizes == std::vector<std::size_t>{6});
  CHECK(one.graph.edges() == complete_join(g, SimpleGraph(6)).edges());

  const CorollaryGraph c = corollary_graph(g, 4, 2, Rational(1, 3), greedy_kfree_provider(2), 5);
  std::size_t nt = 0, pairs = 0;
  for (auto s : c.class_sizes) nt += s;
  for (std::size_t i = 0; i < c.class_sizes.size(); ++i)
    for (std::size_t j = i + 1; j < c.class_sizes.size(); ++j) pairs += c.class_sizes[i] * c.class_sizes[j];
  CHECK(nt == 12);
  CHECK(c.graph.num_edges() == g.num_edges() + c.inner_edges + pairs + 6 * nt);

  auto clique = [](std::size_t n, Rng&) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return SimpleGraph::from_edges(n, e);
  };
  CHECK_THROWS_AS(corollary_graph(g, 2, 2, Rational(1, 2), clique, 1), std::invalid_argument);
}

TEST_CASE("bound table and mixing optimum") {
  CHECK(theta_lower_bound(2, 2) == Rational(1, 8));
  CHECK(theta_lower_bound(3, 2) == Rational(1, 64));
  CHECK(theta_lower_bound(3, 3) == Rational(1, 48));
  CHECK_THROWS_AS(theta_lower_bound(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(theta_lower_bound(3, 1), std::invalid_argument);

  const MixingOptimum a = optimize_a(3, 2, 2);
  CHECK(a.a_star == Rational(32, 63));
  CHECK(a.bound == Rational(16, 63));
  const MixingOptimum b = optimize_a(3, 3, 2);
  CHECK(b.a_star == Rational(24, 47));
  CHECK(b.bound == Rational(12, 47));

  for (int q = 2; q <= 6; ++q)
    for (int t = 2; t <= 5; ++t)
      for (int ell = 2; ell <= t; ++ell) {
        const MixingOptimum m = optimize_a(t, ell, q);
        CHECK(corollary_objective(t, ell, q, m.a_star) == m.bound);
        for (int i = 1; i < 100; ++i) CHECK(corollary_objective(t, ell, q, Rational(i, 100)) <= m.bound);
      }
}
