#include "rtlab/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rtlab {

// ---------------------------------------------------------------- SimpleGraph

SimpleGraph::SimpleGraph(std::size_t n) : adjacency_(n), parts_(n, kNoPart) {}

SimpleGraph SimpleGraph::from_edges(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) {
  SimpleGraph g(n);
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop in graph edge list");
    if (u >= n || v >= n) throw std::out_of_range("graph edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [u, v] : edges) {
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& a : g.adjacency_) std::sort(a.begin(), a.end());
  g.num_edges_ = edges.size();
  return g;
}

bool SimpleGraph::add_edge(Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("self-loop");
  if (u >= num_vertices() || v >= num_vertices()) throw std::out_of_range("edge endpoint out of range");
  auto& au = adjacency_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return false;
  au.insert(it, v);
  auto& av = adjacency_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++num_edges_;
  return true;
}

bool SimpleGraph::adjacent(Vertex u, Vertex v) const {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const Vertex other = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), other);
}

std::vector<std::pair<Vertex, Vertex>> SimpleGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < num_vertices(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

void SimpleGraph::set_part(Vertex v, int part) {
  parts_.at(v) = part;
  num_parts_ = std::max(num_parts_, part + 1);
}

SimpleGraph SimpleGraph::induced(std::span<const Vertex> vertices) const {
  std::vector<std::int64_t> pos(num_vertices(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<std::int64_t>(i);
  std::vector<std::pair<Vertex, Vertex>> es;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (Vertex w : adjacency_[vertices[i]])
      if (pos[w] > static_cast<std::int64_t>(i)) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(pos[w]));
  SimpleGraph g = from_edges(vertices.size(), std::move(es));
  for (std::size_t i = 0; i < vertices.size(); ++i) g.parts_[i] = parts_[vertices[i]];
  g.num_parts_ = num_parts_;
  return g;
}

// ----------------------------------------------------------------- Hypergraph

namespace {

std::vector<int> normalize_parts(std::size_t n, std::vector<int> parts, int& num_parts) {
  if (parts.empty()) parts.assign(n, kNoPart);
  if (parts.size() != n) throw std::invalid_argument("part label count differs from vertex count");
  int max_label = -1;
  for (int p : parts) {
    if (p < kNoPart) throw std::invalid_argument("negative part label");
    max_label = std::max(max_label, p);
  }
  if (num_parts < 0) num_parts = max_label + 1;
  if (max_label >= num_parts) throw std::invalid_argument("part label exceeds part count");
  return parts;
}

bool lex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Hypergraph::Hypergraph(std::size_t n, int r, std::vector<int> parts, int num_parts)
    : n_(n), r_(r) {
  if (r < 1) throw std::invalid_argument("uniformity must be >= 1");
  parts_ = normalize_parts(n, std::move(parts), num_parts);
  num_parts_ = num_parts;
  build_incidence();
}

Hypergraph Hypergraph::from_edges(std::size_t n, int r, const std::vector<std::vector<Vertex>>& edges,
                                  std::vector<int> parts, int num_parts) {
  std::vector<Vertex> flat;
  flat.reserve(edges.size() * static_cast<std::size_t>(std::max(r, 0)));
  for (const auto& e : edges) {
    if (static_cast<int>(e.size()) != r)
      throw std::invalid_argument("edge of size " + std::to_string(e.size()) + " in " +
                                  std::to_string(r) + "-uniform hypergraph");
    flat.insert(flat.end(), e.begin(), e.end());
  }
  return from_flat(n, r, std::move(flat), std::move(parts), num_parts);
}

Hypergraph Hypergraph::from_flat(std::size_t n, int r, std::vector<Vertex> flat, std::vector<int> parts,
                                 int num_parts) {
  if (r < 1) throw std::invalid_argument("uniformity must be >= 1");
  const std::size_t rr = static_cast<std::size_t>(r);
  if (flat.size() % rr != 0) throw std::invalid_argument("flat edge buffer is not a multiple of r");
  const std::size_t m = flat.size() / rr;
  for (std::size_t e = 0; e < m; ++e) {
    auto first = flat.begin() + static_cast<std::ptrdiff_t>(e * rr);
    std::sort(first, first + r);
    for (std::size_t i = 0; i < rr; ++i) {
      if (first[static_cast<std::ptrdiff_t>(i)] >= n) throw std::out_of_range("edge vertex out of range");
      if (i > 0 && first[static_cast<std::ptrdiff_t>(i)] == first[static_cast<std::ptrdiff_t>(i - 1)])
        throw std::invalid_argument("edge with repeated vertex");
    }
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto span_of = [&](std::size_t e) { return std::span<const Vertex>(flat.data() + e * rr, rr); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(span_of(a), span_of(b)); });
  std::vector<Vertex> sorted;
  sorted.reserve(flat.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0 && std::ranges::equal(span_of(order[i]), span_of(order[i - 1]))) continue;
    const auto s = span_of(order[i]);
    sorted.insert(sorted.end(), s.begin(), s.end());
  }
  return from_sorted_flat(n, r, std::move(sorted), std::move(parts), num_parts);
}

Hypergraph Hypergraph::from_sorted_flat(std::size_t n, int r, std::vector<Vertex> flat, std::vector<int> parts,
                                        int num_parts) {
  Hypergraph h;
  h.n_ = n;
  h.r_ = r;
  h.parts_ = normalize_parts(n, std::move(parts), num_parts);
  h.num_parts_ = num_parts;
  h.flat_ = std::move(flat);
  h.build_incidence();
  return h;
}

void Hypergraph::build_incidence() {
  inc_offsets_.assign(n_ + 1, 0);
  for (Vertex v : flat_) ++inc_offsets_[v + 1];
  for (std::size_t i = 0; i < n_; ++i) inc_offsets_[i + 1] += inc_offsets_[i];
  inc_ids_.assign(flat_.size(), 0);
  std::vector<std::size_t> fill(inc_offsets_.begin(), inc_offsets_.end() - 1);
  for (EdgeId e = 0; e < num_edges(); ++e)
    for (Vertex v : edge(e)) inc_ids_[fill[v]++] = e;
}

std::span<const EdgeId> Hypergraph::incident(Vertex v) const {
  return {inc_ids_.data() + inc_offsets_[v], inc_offsets_[v + 1] - inc_offsets_[v]};
}

bool Hypergraph::contains(std::span<const Vertex> sorted_edge) const {
  if (static_cast<int>(sorted_edge.size()) != r_) return false;
  std::size_t lo = 0, hi = num_edges();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (lex_less(edge(static_cast<EdgeId>(mid)), sorted_edge))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < num_edges() && std::ranges::equal(edge(static_cast<EdgeId>(lo)), sorted_edge);
}

std::vector<Vertex> Hypergraph::part_vertices(int p) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n_; ++v)
    if (parts_[v] == p) out.push_back(v);
  return out;
}

bool Hypergraph::is_cross(EdgeId e) const {
  std::vector<int> seen;
  for (Vertex v : edge(e)) {
    const int p = parts_[v];
    if (p == kNoPart || std::find(seen.begin(), seen.end(), p) != seen.end()) return false;
    seen.push_back(p);
  }
  return true;
}

bool Hypergraph::is_inside(EdgeId e) const {
  const auto ed = edge(e);
  const int p = parts_[ed.front()];
  if (p == kNoPart) return false;
  return std::all_of(ed.begin(), ed.end(), [&](Vertex v) { return parts_[v] == p; });
}

Hypergraph Hypergraph::with_parts(std::vector<int> parts, int num_parts) const {
  return from_sorted_flat(n_, r_, flat_, std::move(parts), num_parts);
}

// ------------------------------------------------------------------ PairIndex

std::uint64_t PairIndex::key(Vertex x, Vertex y) {
  if (x > y) std::swap(x, y);
  return (static_cast<std::uint64_t>(x) << 32) | y;
}

PairIndex::PairIndex(const Hypergraph& h) {
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto ed = h.edge(e);
    for (std::size_t i = 0; i < ed.size(); ++i)
      for (std::size_t j = i + 1; j < ed.size(); ++j) index_[key(ed[i], ed[j])].push_back(e);
  }
}

std::span<const EdgeId> PairIndex::covering(Vertex x, Vertex y) const {
  if (x == y) return {};
  auto it = index_.find(key(x, y));
  if (it == index_.end()) return {};
  return it->second;
}

// ------------------------------------------------------------------ Embedding

std::vector<Vertex> Embedding::core() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < host.size(); ++i)
    if (i < roles.size() && roles[i] == Role::core) out.push_back(host[i]);
  return out;
}

bool Embedding::injective() const {
  std::vector<Vertex> h = host;
  std::sort(h.begin(), h.end());
  return std::adjacent_find(h.begin(), h.end()) == h.end();
}

// ----------------------------------------------------------------- operations

SimpleGraph shadow(const Hypergraph& h) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  const int r = h.uniformity();
  pairs.reserve(h.num_edges() * static_cast<std::size_t>(r * (r - 1) / 2));
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto ed = h.edge(e);
    for (std::size_t i = 0; i < ed.size(); ++i)
      for (std::size_t j = i + 1; j < ed.size(); ++j) pairs.emplace_back(ed[i], ed[j]);
  }
  SimpleGraph g = SimpleGraph::from_edges(h.num_vertices(), std::move(pairs));
  for (Vertex v = 0; v < h.num_vertices(); ++v)
    if (h.part(v) != kNoPart) g.set_part(v, h.part(v));
  g.set_num_parts(h.num_parts());
  return g;
}

Hypergraph blowup(const Hypergraph& h, int t) {
  if (t < 1) throw std::invalid_argument("blowup factor must be >= 1");
  const int r = h.uniformity();
  const std::size_t n = h.num_vertices() * static_cast<std::size_t>(t);
  std::vector<int> parts(n);
  for (Vertex v = 0; v < h.num_vertices(); ++v)
    for (int a = 0; a < t; ++a) parts[blowup_vertex(v, a, t)] = h.part(v);

  std::vector<Vertex> flat;
  std::vector<int> copy(static_cast<std::size_t>(r), 0);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto ed = h.edge(e);
    std::fill(copy.begin(), copy.end(), 0);
    for (;;) {
      for (int i = 0; i < r; ++i) flat.push_back(blowup_vertex(ed[static_cast<std::size_t>(i)], copy[static_cast<std::size_t>(i)], t));
      int i = r - 1;
      while (i >= 0 && ++copy[static_cast<std::size_t>(i)] == t) copy[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
    }
  }
  // Copies of a sorted edge stay sorted and inherit lexicographic order.
  return Hypergraph::from_flat(n, r, std::move(flat), std::move(parts), h.num_parts());
}

std::vector<std::size_t> balanced_part_sizes(std::size_t n, int parts) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(parts), n / static_cast<std::size_t>(parts));
  for (std::size_t i = 0; i < n % static_cast<std::size_t>(parts); ++i) ++sizes[i];
  return sizes;
}

Hypergraph turan_hypergraph(std::size_t n, int s, int r) {
  if (r < 1) throw std::invalid_argument("uniformity must be >= 1");
  if (s < r) throw std::invalid_argument("Turan hypergraph needs s >= r parts");
  const auto sizes = balanced_part_sizes(n, s);
  std::vector<int> parts;
  std::vector<std::vector<Vertex>> members(static_cast<std::size_t>(s));
  Vertex v = 0;
  for (int p = 0; p < s; ++p)
    for (std::size_t i = 0; i < sizes[static_cast<std::size_t>(p)]; ++i) {
      parts.push_back(p);
      members[static_cast<std::size_t>(p)].push_back(v++);
    }

  std::vector<Vertex> flat;
  std::vector<int> choose(static_cast<std::size_t>(r));
  std::iota(choose.begin(), choose.end(), 0);
  for (;;) {
    // Cartesian product of the chosen parts.
    std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
    bool empty = false;
    for (int c : choose) empty = empty || members[static_cast<std::size_t>(c)].empty();
    while (!empty) {
      for (int i = 0; i < r; ++i)
        flat.push_back(members[static_cast<std::size_t>(choose[static_cast<std::size_t>(i)])][idx[static_cast<std::size_t>(i)]]);
      int i = r - 1;
      while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == members[static_cast<std::size_t>(choose[static_cast<std::size_t>(i)])].size())
        idx[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
    }
    int i = r - 1;
    while (i >= 0 && choose[static_cast<std::size_t>(i)] == s - r + i) --i;
    if (i < 0) break;
    ++choose[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) choose[static_cast<std::size_t>(j)] = choose[static_cast<std::size_t>(j - 1)] + 1;
  }
  return Hypergraph::from_flat(n, r, std::move(flat), std::move(parts), s);
}

SimpleGraph complete_join(const SimpleGraph& g, const SimpleGraph& t_graph) {
  const std::size_t ng = g.num_vertices();
  const std::size_t nt = t_graph.num_vertices();
  std::vector<std::pair<Vertex, Vertex>> es = g.edges();
  for (const auto& [u, v] : t_graph.edges())
    es.emplace_back(static_cast<Vertex>(u + ng), static_cast<Vertex>(v + ng));
  for (Vertex u = 0; u < ng; ++u)
    for (Vertex v = 0; v < nt; ++v) es.emplace_back(u, static_cast<Vertex>(v + ng));
  SimpleGraph out = SimpleGraph::from_edges(ng + nt, std::move(es));
  for (Vertex u = 0; u < ng; ++u)
    if (g.part(u) != kNoPart) out.set_part(u, g.part(u));
  for (Vertex v = 0; v < nt; ++v)
    if (t_graph.part(v) != kNoPart) out.set_part(static_cast<Vertex>(v + ng), t_graph.part(v) + g.num_parts());
  out.set_num_parts(std::max(out.num_parts(), g.num_parts() + t_graph.num_parts()));
  return out;
}

std::size_t codegree(const Hypergraph& h, Vertex x, Vertex y) {
  if (x == y) throw std::invalid_argument("codegree of a vertex with itself");
  if (x >= h.num_vertices() || y >= h.num_vertices()) throw std::out_of_range("vertex out of range");
  const auto inc = h.degree(x) <= h.degree(y) ? h.incident(x) : h.incident(y);
  const Vertex other = h.degree(x) <= h.degree(y) ? y : x;
  std::size_t count = 0;
  for (EdgeId e : inc) {
    const auto ed = h.edge(e);
    count += std::binary_search(ed.begin(), ed.end(), other) ? 1 : 0;
  }
  return count;
}

CleanResult clean_low_codegree(const Hypergraph& h, std::size_t threshold, bool one_pass) {
  if (!h.partitioned()) throw std::invalid_argument("clean_low_codegree needs part labels");
  CleanResult out{h, 0, 0};
  if (threshold == 0) return out;

  std::vector<char> alive(h.num_edges(), 1);
  auto cross_pair = [&](Vertex a, Vertex b) {
    return h.part(a) != kNoPart && h.part(b) != kNoPart && h.part(a) != h.part(b);
  };
  for (;;) {
    std::unordered_map<std::uint64_t, std::size_t> deg;
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      if (!alive[e]) continue;
      const auto ed = h.edge(e);
      for (std::size_t i = 0; i < ed.size(); ++i)
        for (std::size_t j = i + 1; j < ed.size(); ++j)
          if (cross_pair(ed[i], ed[j])) ++deg[PairIndex::key(ed[i], ed[j])];
    }
    std::size_t removed_now = 0;
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      if (!alive[e]) continue;
      const auto ed = h.edge(e);
      bool low = false;
      for (std::size_t i = 0; i < ed.size() && !low; ++i)
        for (std::size_t j = i + 1; j < ed.size() && !low; ++j)
          if (cross_pair(ed[i], ed[j])) low = deg[PairIndex::key(ed[i], ed[j])] <= threshold;
      if (low) {
        alive[e] = 0;
        ++removed_now;
      }
    }
    ++out.passes;
    out.removed += removed_now;
    if (removed_now == 0 || one_pass) break;
  }
  out.hypergraph = h.filter([&](EdgeId e) { return alive[e] != 0; });
  return out;
}

}  // namespace rtlab
