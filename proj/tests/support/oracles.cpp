#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace oracle {

namespace {

using Mask = std::uint32_t;

std::vector<Mask> neighbour_masks(const SimpleGraph& g) {
  if (g.num_vertices() > 20) throw std::invalid_argument("oracle limited to 20 vertices");
  std::vector<Mask> nb(g.num_vertices(), 0);
  for (const auto& [u, v] : g.edges()) {
    nb[u] |= Mask{1} << v;
    nb[v] |= Mask{1} << u;
  }
  return nb;
}

// best[mask] = clique number of g[mask]
std::vector<std::uint8_t> clique_table(const SimpleGraph& g) {
  const auto nb = neighbour_masks(g);
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> best(std::size_t{1} << n, 0);
  for (Mask mask = 1; mask < (Mask{1} << n); ++mask) {
    const int v = std::countr_zero(mask);
    const Mask rest = mask & (mask - 1);
    best[mask] = std::max<std::uint8_t>(best[rest], static_cast<std::uint8_t>(1 + best[rest & nb[v]]));
  }
  return best;
}

}  // namespace

std::size_t clique_number(const SimpleGraph& g) {
  if (g.num_vertices() == 0) return 0;
  return clique_table(g).back();
}

std::size_t alpha_t(const SimpleGraph& g, int t) {
  if (g.num_vertices() == 0) return 0;
  const auto best = clique_table(g);
  std::size_t out = 0;
  for (Mask mask = 0; mask < best.size(); ++mask)
    if (best[mask] < t) out = std::max<std::size_t>(out, std::popcount(mask));
  return out;
}

std::size_t hyper_independence(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  if (n > 20) throw std::invalid_argument("oracle limited to 20 vertices");
  std::vector<Mask> edges;
  for (rtlab::EdgeId e = 0; e < h.num_edges(); ++e) {
    Mask m = 0;
    for (Vertex v : h.edge(e)) m |= Mask{1} << v;
    edges.push_back(m);
  }
  std::size_t out = 0;
  for (Mask mask = 0; mask < (Mask{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= out) continue;
    bool free = true;
    for (Mask e : edges)
      if ((e & mask) == e) {
        free = false;
        break;
      }
    if (free) out = size;
  }
  return out;
}

namespace {

bool connected_violation(const Hypergraph& h, const std::vector<rtlab::EdgeId>& chosen, int ell) {
  const int r = h.uniformity();
  std::vector<Vertex> verts;
  for (auto e : chosen) verts.insert(verts.end(), h.edge(e).begin(), h.edge(e).end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  const int v = static_cast<int>(verts.size());
  const int m = static_cast<int>(chosen.size());
  if (!(v <= ell && v < r + (r - 1) * (m - 1))) return false;
  // connectivity, by repeated absorption
  std::vector<char> in(chosen.size(), 0);
  in[0] = 1;
  std::set<Vertex> reach(h.edge(chosen[0]).begin(), h.edge(chosen[0]).end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      if (in[i]) continue;
      for (Vertex x : h.edge(chosen[i]))
        if (reach.count(x)) {
          in[i] = 1;
          reach.insert(h.edge(chosen[i]).begin(), h.edge(chosen[i]).end());
          grew = true;
          break;
        }
    }
  }
  return std::all_of(in.begin(), in.end(), [](char c) { return c != 0; });
}

}  // namespace

bool sparse_violation_subsets(const Hypergraph& h, int ell, int max_edges) {
  const auto m = h.num_edges();
  std::vector<rtlab::EdgeId> chosen;
  std::function<bool(rtlab::EdgeId)> rec = [&](rtlab::EdgeId from) {
    if (!chosen.empty() && connected_violation(h, chosen, ell)) return true;
    if (static_cast<int>(chosen.size()) == max_edges) return false;
    for (rtlab::EdgeId e = from; e < m; ++e) {
      chosen.push_back(e);
      if (rec(e + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec(0);
}

bool sparse_violation_growth(const Hypergraph& h, int ell) {
  const int r = h.uniformity();
  std::set<std::vector<rtlab::EdgeId>> seen;
  std::function<bool(std::vector<rtlab::EdgeId>&)> grow = [&](std::vector<rtlab::EdgeId>& cur) {
    std::set<Vertex> verts;
    for (auto e : cur) verts.insert(h.edge(e).begin(), h.edge(e).end());
    const int v = static_cast<int>(verts.size());
    const int m = static_cast<int>(cur.size());
    if (v <= ell && v < r + (r - 1) * (m - 1)) return true;
    for (rtlab::EdgeId e = 0; e < h.num_edges(); ++e) {
      if (std::find(cur.begin(), cur.end(), e) != cur.end()) continue;
      int fresh = 0;
      bool touches = false;
      for (Vertex x : h.edge(e)) {
        if (verts.count(x))
          touches = true;
        else
          ++fresh;
      }
      if (!touches || v + fresh > ell) continue;
      auto next = cur;
      next.push_back(e);
      std::sort(next.begin(), next.end());
      if (!seen.insert(next).second) continue;
      if (grow(next)) return true;
    }
    return false;
  };
  for (rtlab::EdgeId e = 0; e < h.num_edges(); ++e) {
    std::vector<rtlab::EdgeId> cur{e};
    if (grow(cur)) return true;
  }
  return false;
}

double cap_measure_beta(int k, double s) {
  const double half = 0.5 * boost::math::ibeta(k / 2.0, 0.5, 1 - s * s);
  return s >= 0 ? half : 1 - half;
}

std::size_t far_matching_size(const std::vector<std::uint32_t>& a1, const std::vector<std::uint32_t>& a2,
                              const rtlab::SpherePartition& p, double theta) {
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  G g(a1.size() + a2.size());
  for (std::size_t i = 0; i < a1.size(); ++i)
    for (std::size_t j = 0; j < a2.size(); ++j)
      if (rtlab::distance(p.reps[a1[i]], p.reps[a2[j]]) >= 2 - theta) boost::add_edge(i, a1.size() + j, g);
  std::vector<boost::graph_traits<G>::vertex_descriptor> mate(boost::num_vertices(g));
  boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
  return boost::matching_size(g, &mate[0]);
}

SimpleGraph random_graph(std::size_t n, double p, rtlab::Rng& rng) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform() < p) edges.emplace_back(u, v);
  return SimpleGraph::from_edges(n, std::move(edges));
}

namespace {

void each_rset(std::size_t n, int r, const std::function<void(const std::vector<Vertex>&)>& f) {
  std::vector<Vertex> cur;
  std::function<void(Vertex)> rec = [&](Vertex from) {
    if (static_cast<int>(cur.size()) == r) {
      f(cur);
      return;
    }
    for (Vertex v = from; v < n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

Hypergraph random_hypergraph(std::size_t n, int r, double p, rtlab::Rng& rng) {
  std::vector<std::vector<Vertex>> edges;
  each_rset(n, r, [&](const std::vector<Vertex>& e) {
    if (rng.uniform() < p) edges.push_back(e);
  });
  return Hypergraph::from_edges(n, r, edges);
}

Hypergraph complete_hypergraph(std::size_t n, int r) {
  std::vector<std::vector<Vertex>> edges;
  each_rset(n, r, [&](const std::vector<Vertex>& e) { edges.push_back(e); });
  return Hypergraph::from_edges(n, r, edges);
}

std::vector<std::vector<Vertex>> common_links(const Hypergraph& h, const std::vector<Vertex>& samples) {
  const int r = h.uniformity();
  std::vector<std::vector<Vertex>> out;
  each_rset(h.num_vertices(), r - 1, [&](const std::vector<Vertex>& e) {
    std::vector<int> parts;
    for (Vertex x : e) parts.push_back(h.part(x));
    std::sort(parts.begin(), parts.end());
    for (int i = 0; i < r - 1; ++i)
      if (parts[static_cast<std::size_t>(i)] != i + 1) return;
    for (Vertex w : samples) {
      std::vector<Vertex> full = e;
      full.push_back(w);
      std::sort(full.begin(), full.end());
      bool present = false;
      for (rtlab::EdgeId id = 0; id < h.num_edges() && !present; ++id)
        present = std::equal(full.begin(), full.end(), h.edge(id).begin());
      if (!present) return;
    }
    out.push_back(e);
  });
  return out;
}

}  // namespace oracle
