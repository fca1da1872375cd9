#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rtlab/hypergraph.hpp"
#include "rtlab/io.hpp"
#include "support/oracles.hpp"

using namespace rtlab;

namespace {

bool edges_sorted_distinct(const Hypergraph& h) {
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto ed = h.edge(e);
    if (!std::is_sorted(ed.begin(), ed.end()) || std::adjacent_find(ed.begin(), ed.end()) != ed.end()) return false;
    if (e > 0) {
      const auto prev = h.edge(e - 1);
      if (!std::lexicographical_compare(prev.begin(), prev.end(), ed.begin(), ed.end())) return false;
    }
  }
  return true;
}

std::vector<int> labels(std::size_t n, int parts) {
  std::vector<int> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = static_cast<int>(v % static_cast<std::size_t>(parts));
  return out;
}

}  // namespace

TEST_CASE("simple graph invariants") {
  SimpleGraph g = SimpleGraph::from_edges(4, {{1, 0}, {0, 1}, {2, 3}});
  CHECK(g.num_edges() == 2);
  CHECK(g.adjacent(0, 1));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK_THROWS_AS(SimpleGraph::from_edges(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(SimpleGraph::from_edges(3, {{0, 3}}), std::logic_error);
  CHECK(g.add_edge(0, 2));
  CHECK_FALSE(g.add_edge(2, 0));
}

TEST_CASE("hypergraph edges are sorted distinct r-sets") {
  const Hypergraph h = Hypergraph::from_edges(5, 3, {{4, 1, 0}, {0, 1, 4}, {2, 3, 1}});
  CHECK(h.num_edges() == 2);
  CHECK(edges_sorted_distinct(h));
  CHECK_THROWS_AS(Hypergraph::from_edges(5, 3, {{0, 0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph::from_edges(5, 3, {{0, 1, 5}}), std::logic_error);
  CHECK_THROWS_AS(Hypergraph::from_edges(5, 3, {{0, 1}}), std::invalid_argument);
  const std::vector<Vertex> e{0, 1, 4};
  CHECK(h.contains(e));
}

TEST_CASE("shadow") {
  CHECK(shadow(Hypergraph(4, 3)).num_edges() == 0);
  const SimpleGraph tri = shadow(Hypergraph::from_edges(3, 3, {{0, 1, 2}}));
  CHECK(tri.num_edges() == 3);
  const SimpleGraph k4 = shadow(oracle::complete_hypergraph(4, 3));
  CHECK(k4.num_edges() == 6);

  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Hypergraph h = oracle::random_hypergraph(9, 3, 0.1, rng);
    const SimpleGraph s = shadow(h);
    CHECK(s.num_edges() <= 3 * h.num_edges());
    for (Vertex x = 0; x < 9; ++x)
      for (Vertex y = x + 1; y < 9; ++y) CHECK(s.adjacent(x, y) == (codegree(h, x, y) > 0));
  }
}

TEST_CASE("blowup") {
  const Hypergraph one = Hypergraph::from_edges(3, 3, {{0, 1, 2}}, {0, 1, 2}, 3);
  const Hypergraph b = blowup(one, 2);
  CHECK(b.num_vertices() == 6);
  CHECK(b.num_edges() == 8);
  for (Vertex v = 0; v < 6; ++v) CHECK(b.part(v) == one.part(v / 2));
  CHECK(blowup(one, 1) == one);
  CHECK_THROWS_AS(blowup(one, 0), std::invalid_argument);
}

TEST_CASE("blowup edge count identity and shadow of one copy") {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const int r = 2 + i % 3;
    const int t = 1 + (i / 3) % 4;
    const std::size_t n = 6;
    const Hypergraph h = oracle::random_hypergraph(n, r, 0.3, rng);
    const Hypergraph b = blowup(h, t);
    std::size_t tr = 1;
    for (int j = 0; j < r; ++j) tr *= static_cast<std::size_t>(t);
    CHECK(b.num_edges() == tr * h.num_edges());
    CHECK(b.num_vertices() == n * static_cast<std::size_t>(t));
    CHECK(edges_sorted_distinct(b));

    const SimpleGraph sb = shadow(b), sh = shadow(h);
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = x + 1; y < n; ++y)
        CHECK(sb.adjacent(blowup_vertex(x, 0, t), blowup_vertex(y, t - 1, t)) == sh.adjacent(x, y));
  }
}

TEST_CASE("turan hypergraph") {
  CHECK(turan_hypergraph(6, 3, 3).num_edges() == 8);
  CHECK(turan_hypergraph(5, 5, 3).num_edges() == 10);
  const auto sizes = balanced_part_sizes(5, 3);
  CHECK(sizes == std::vector<std::size_t>{2, 2, 1});
  CHECK_THROWS_AS(turan_hypergraph(6, 2, 3), std::invalid_argument);

  // Part-size enumeration: sum over r-subsets of parts of the product of sizes.
  for (std::size_t n : {7u, 10u, 13u})
    for (int s : {3, 4, 5})
      for (int r : {2, 3}) {
        if (s < r) continue;
        const auto ps = balanced_part_sizes(n, s);
        std::size_t expect = 0;
        for (unsigned mask = 0; mask < (1u << s); ++mask) {
          if (std::popcount(mask) != r) continue;
          std::size_t prod = 1;
          for (int p = 0; p < s; ++p)
            if (mask >> p & 1u) prod *= ps[static_cast<std::size_t>(p)];
          expect += prod;
        }
        const Hypergraph t = turan_hypergraph(n, s, r);
        CHECK(t.num_edges() == expect);
        for (EdgeId e = 0; e < t.num_edges(); ++e) CHECK(t.is_cross(e));
      }
}

TEST_CASE("complete join") {
  const SimpleGraph g = SimpleGraph::from_edges(3, {{0, 1}});
  CHECK(complete_join(g, SimpleGraph(0)) == g);
  CHECK(complete_join(SimpleGraph(1), SimpleGraph(1)).num_edges() == 1);
  const SimpleGraph k2 = SimpleGraph::from_edges(2, {{0, 1}});
  CHECK(complete_join(k2, k2).num_edges() == 6);
  const SimpleGraph t = SimpleGraph::from_edges(4, {{0, 1}, {2, 3}, {1, 2}});
  CHECK(complete_join(g, t).num_edges() == 1 + 3 + 12);
}

TEST_CASE("codegree") {
  const Hypergraph one = Hypergraph::from_edges(4, 3, {{0, 1, 2}});
  CHECK(codegree(one, 0, 3) == 0);
  CHECK(codegree(one, 0, 1) == 1);
  const Hypergraph k5 = oracle::complete_hypergraph(5, 3);
  for (Vertex x = 0; x < 5; ++x)
    for (Vertex y = x + 1; y < 5; ++y) CHECK(codegree(k5, x, y) == 3);
  CHECK_THROWS_AS(codegree(one, 1, 1), std::invalid_argument);
}

TEST_CASE("clean_low_codegree") {
  const Hypergraph one = Hypergraph::from_edges(3, 3, {{0, 1, 2}}, {0, 1, 2}, 3);
  CHECK(clean_low_codegree(one, 0).hypergraph == one);
  CHECK(clean_low_codegree(one, 16).hypergraph.num_edges() == 0);
  CHECK_THROWS_AS(clean_low_codegree(Hypergraph::from_edges(3, 3, {{0, 1, 2}}), 2), std::invalid_argument);

  Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 15;
    Hypergraph h = oracle::random_hypergraph(n, 3, 0.5, rng).with_parts(labels(n, 3), 3);
    const std::size_t thr = 1 + static_cast<std::size_t>(i % 4);
    const CleanResult c = clean_low_codegree(h, thr);
    CHECK(c.removed == h.num_edges() - c.hypergraph.num_edges());
    // Recount every cross pair.
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = x + 1; y < n; ++y) {
        if (h.part(x) == h.part(y)) continue;
        const auto d = codegree(c.hypergraph, x, y);
        CHECK((d == 0 || d > thr));
      }
    CHECK(clean_low_codegree(c.hypergraph, thr).hypergraph == c.hypergraph);
    const CleanResult once = clean_low_codegree(h, thr, true);
    CHECK(once.passes == 1);
    CHECK(once.hypergraph.num_edges() >= c.hypergraph.num_edges());
  }
}

TEST_CASE("pair index and embeddings") {
  const Hypergraph h = Hypergraph::from_edges(5, 3, {{0, 1, 2}, {1, 2, 3}});
  const PairIndex idx(h);
  CHECK(idx.covering(1, 2).size() == 2);
  CHECK(idx.covering(2, 1).size() == 2);
  CHECK_FALSE(idx.covered(0, 4));
  Embedding e{{3, 1, 2}, {Role::core, Role::core, Role::subdivision}, {}};
  CHECK(e.injective());
  CHECK(e.core() == std::vector<Vertex>{3, 1});
  e.host[2] = 3;
  CHECK_FALSE(e.injective());
}

TEST_CASE("hypergraph files round-trip") {
  Rng rng(1);
  const Hypergraph h = oracle::random_hypergraph(8, 3, 0.3, rng).with_parts(labels(8, 2), 2);
  std::stringstream s;
  write_hypergraph(s, h);
  CHECK(read_hypergraph(s) == h);

  const SimpleGraph g = SimpleGraph::from_edges(4, {{0, 1}, {2, 3}});
  std::stringstream t;
  write_graph(t, g);
  CHECK(t.str() == "HG 2 4 2 0\n-1\n-1\n-1\n-1\n0 1\n2 3\n");
  CHECK(read_graph(t) == g);
}

TEST_CASE("malformed hypergraph files are rejected") {
  for (const char* text : {"", "XX 3 1 0 0", "HG 3 3 1 0\n-1\n-1\n-1\n0 1", "HG 3 3 1 0\n-1\n-1\n-1\n2 1 0",
                           "HG 3 3 1 0\n-1\n-1\n-1\n0 1 3", "HG 2 2 1 1\n0\n1\n0 1", "HG 2 2 1 0\n-1\n-1\n0 1\n7"}) {
    std::stringstream s(text);
    INFO(text);
    CHECK_THROWS_AS(read_hypergraph(s), ParseError);
  }
}
