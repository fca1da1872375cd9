#include "rtlab/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

#include "rtlab/sparse_scan.hpp"

namespace rtlab {

using Bits = boost::dynamic_bitset<>;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::budget_exceeded: return "budget-exceeded";
  }
  return "unknown";
}

namespace {

std::vector<Bits> adjacency_bits(const SimpleGraph& g, const std::vector<Vertex>& order) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = static_cast<Vertex>(i);
  std::vector<Bits> adj(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i)
    for (Vertex w : g.neighbors(order[i])) adj[i].set(pos[w]);
  return adj;
}

/// Clique search on bitset adjacency. Colour classes give the bound.
class CliqueSearcher {
 public:
  CliqueSearcher(const std::vector<Bits>& adj, NodeCounter& counter) : adj_(adj), counter_(counter) {}

  /// A clique of `size` inside P, or empty.
  std::vector<std::size_t> find(const Bits& p, int size) {
    target_ = size;
    clique_.clear();
    if (size <= 0) return {};
    if (expand(p)) return clique_;
    return {};
  }

  /// Calls visit for every clique of `size` inside P (each once, as a set)
  /// until it returns true.
  bool each(const Bits& p, int size, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    target_ = size;
    clique_.clear();
    visit_ = &visit;
    const bool stopped = enumerate(p);
    visit_ = nullptr;
    return stopped;
  }

 private:
  void colour(const Bits& p, std::vector<std::size_t>& order, std::vector<int>& colours) const {
    Bits q = p;
    int c = 0;
    while (q.any()) {
      ++c;
      Bits u = q;
      for (std::size_t v = u.find_first(); v != Bits::npos; v = u.find_next(v)) {
        u -= adj_[v];
        q.reset(v);
        order.push_back(v);
        colours.push_back(c);
      }
    }
  }

  bool expand(Bits p) {
    if (!counter_.tick()) return false;
    if (static_cast<int>(clique_.size()) == target_) return true;
    std::vector<std::size_t> order;
    std::vector<int> colours;
    colour(p, order, colours);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (static_cast<int>(clique_.size()) + colours[i] < target_) return false;
      const std::size_t v = order[i];
      clique_.push_back(v);
      if (expand(p & adj_[v])) return true;
      clique_.pop_back();
      if (counter_.exhausted()) return false;
      p.reset(v);
    }
    return false;
  }

  bool enumerate(Bits p) {
    if (!counter_.tick()) return false;
    if (static_cast<int>(clique_.size()) == target_) return (*visit_)(clique_);
    if (static_cast<int>(clique_.size() + p.count()) < target_) return false;
    for (std::size_t v = p.find_first(); v != Bits::npos; v = p.find_first()) {
      p.reset(v);
      clique_.push_back(v);
      const bool stop = enumerate(p & adj_[v]);
      clique_.pop_back();
      if (stop || counter_.exhausted()) return stop;
      if (static_cast<int>(clique_.size() + p.count()) < target_) return false;
    }
    return false;
  }

  const std::vector<Bits>& adj_;
  NodeCounter& counter_;
  int target_ = 0;
  std::vector<std::size_t> clique_;
  const std::function<bool(const std::vector<std::size_t>&)>* visit_ = nullptr;
};

std::vector<Vertex> degree_order(const SimpleGraph& g) {
  std::vector<Vertex> order(g.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  return order;
}

Embedding clique_embedding(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  Embedding e;
  e.host = vertices;
  e.roles.assign(vertices.size(), Role::core);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j) e.host_edges.push_back({vertices[i], vertices[j]});
  return e;
}

std::vector<Vertex> sorted_edge(std::span<const Vertex> e) { return {e.begin(), e.end()}; }

}  // namespace

// ------------------------------------------------------------------- cliques

PatternResult find_clique(const SimpleGraph& g, int s, const SearchBudget& budget) {
  if (s < 1) throw std::invalid_argument("find_clique needs s >= 1");
  PatternResult out;
  const std::size_t n = g.num_vertices();
  if (static_cast<std::size_t>(s) > n) return out;
  const auto order = degree_order(g);
  const auto adj = adjacency_bits(g, order);
  NodeCounter counter(budget);
  CliqueSearcher searcher(adj, counter);
  Bits all(n);
  all.set();
  const auto found = searcher.find(all, s);
  out.nodes = counter.nodes();
  if (!found.empty()) {
    std::vector<Vertex> vs;
    for (std::size_t i : found) vs.push_back(order[i]);
    out.witness = clique_embedding(vs);
    out.verdict = Verdict::violated;
  } else if (counter.exhausted()) {
    out.verdict = Verdict::budget_exceeded;
  }
  return out;
}

bool verify_clique(const SimpleGraph& g, const std::vector<Vertex>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.num_vertices()) return false;
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (vertices[i] == vertices[j]) return false;
      const auto nb = g.neighbors(vertices[i]);
      if (std::find(nb.begin(), nb.end(), vertices[j]) == nb.end()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------- alpha_t (K_t-free)

namespace {

class AlphaSearch {
 public:
  AlphaSearch(const std::vector<Bits>& adj, int t, NodeCounter& counter)
      : adj_(adj), t_(t), counter_(counter), clique_counter_(SearchBudget::unlimited()),
        cliques_(adj, clique_counter_) {}

  void run(Bits chosen, Bits cand) { branch(chosen, cand); }

  std::size_t best = 0;
  Bits best_set;

  std::size_t bound(const Bits& chosen, Bits cand) const {
    std::size_t b = chosen.count();
    const std::size_t cap = static_cast<std::size_t>(t_ - 1);
    while (cand.any()) {
      Bits pool = cand;
      std::size_t size = 0;
      for (std::size_t v = pool.find_first(); v != Bits::npos; v = pool.find_next(v)) {
        pool &= adj_[v];
        cand.reset(v);
        ++size;
      }
      b += std::min(size, cap);
    }
    return b;
  }

 private:
  void branch(Bits chosen, Bits cand) {
    if (!counter_.tick()) return;
    const std::size_t size = chosen.count();
    if (size > best) {
      best = size;
      best_set = chosen;
    }
    if (cand.none()) return;
    if (bound(chosen, cand) <= best) return;
    const std::size_t v = cand.find_first();
    cand.reset(v);
    // A K_t through v inside chosen + v needs a K_{t-1} in chosen n N(v).
    if (t_ == 1 || cliques_.find(chosen & adj_[v], t_ - 1).empty()) {
      Bits with = chosen;
      with.set(v);
      branch(with, cand);
      if (counter_.exhausted()) return;
    }
    branch(chosen, cand);
  }

  const std::vector<Bits>& adj_;
  int t_;
  NodeCounter& counter_;
  NodeCounter clique_counter_;
  mutable CliqueSearcher cliques_;
};

}  // namespace

BoundResult alpha_t(const SimpleGraph& g, int t, const SearchBudget& budget) {
  if (t < 2) throw std::invalid_argument("alpha_t needs t >= 2");
  const std::size_t n = g.num_vertices();
  BoundResult out;
  if (n == 0) return out;
  const auto order = degree_order(g);
  std::vector<Vertex> rev(order.rbegin(), order.rend());  // low degree first
  const auto adj = adjacency_bits(g, rev);
  NodeCounter counter(budget);
  AlphaSearch search(adj, t, counter);
  Bits all(n);
  all.set();
  search.run(Bits(n), all);
  out.nodes = counter.nodes();
  out.lower = search.best;
  for (std::size_t i = search.best_set.find_first(); i != Bits::npos; i = search.best_set.find_next(i))
    out.witness.push_back(rev[i]);
  std::sort(out.witness.begin(), out.witness.end());
  if (counter.exhausted()) {
    out.exact = false;
    out.upper = std::max(out.lower, search.bound(Bits(n), all));
  } else {
    out.upper = out.lower;
  }
  return out;
}

// ------------------------------------------------------- hypergraph alpha

namespace {

class HyperIndependence {
 public:
  HyperIndependence(const Hypergraph& h, NodeCounter& counter) : h_(h), counter_(counter) {}

  std::size_t best = 0;
  Bits best_set;

  void branch(Bits chosen, Bits cand) {
    if (!counter_.tick()) return;
    propagate(chosen, cand);
    const std::size_t size = chosen.count();
    if (size > best) {
      best = size;
      best_set = chosen;
    }
    if (cand.none()) return;
    if (bound(chosen, cand) <= best) return;
    const std::size_t v = pick(cand);
    cand.reset(v);
    Bits with = chosen;
    with.set(v);
    branch(with, cand);
    if (counter_.exhausted()) return;
    branch(chosen, cand);
  }

  std::size_t bound(const Bits& chosen, const Bits& cand) const {
    // Edges inside chosen + cand need a candidate excluded each; edges with
    // disjoint candidate parts need distinct ones.
    Bits used(cand.size());
    std::size_t packing = 0;
    for (EdgeId e = 0; e < h_.num_edges(); ++e) {
      bool inside = true, disjoint = true, touches = false;
      for (Vertex x : h_.edge(e)) {
        if (cand.test(x)) {
          touches = true;
          if (used.test(x)) disjoint = false;
        } else if (!chosen.test(x)) {
          inside = false;
          break;
        }
      }
      if (!inside || !touches || !disjoint) continue;
      for (Vertex x : h_.edge(e))
        if (cand.test(x)) used.set(x);
      ++packing;
    }
    return chosen.count() + cand.count() - packing;
  }

 private:
  // Drops candidates that would complete an edge with the chosen set.
  void propagate(const Bits& chosen, Bits& cand) const {
    for (EdgeId e = 0; e < h_.num_edges(); ++e) {
      std::size_t outside = 0;
      Vertex last = 0;
      bool dead = false;
      for (Vertex x : h_.edge(e)) {
        if (chosen.test(x)) continue;
        if (!cand.test(x)) {
          dead = true;
          break;
        }
        ++outside;
        last = x;
      }
      if (!dead && outside == 1) cand.reset(last);
    }
  }

  std::size_t pick(const Bits& cand) const {
    std::size_t best_v = cand.find_first();
    std::size_t best_deg = 0;
    for (std::size_t v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
      const std::size_t d = h_.degree(static_cast<Vertex>(v));
      if (d > best_deg) {
        best_deg = d;
        best_v = v;
      }
    }
    return best_v;
  }

  const Hypergraph& h_;
  NodeCounter& counter_;
};

}  // namespace

BoundResult hyper_independence(const Hypergraph& h, const SearchBudget& budget) {
  const std::size_t n = h.num_vertices();
  BoundResult out;
  if (n == 0) return out;
  NodeCounter counter(budget);
  HyperIndependence search(h, counter);
  Bits all(n);
  all.set();
  search.branch(Bits(n), all);
  out.nodes = counter.nodes();
  out.lower = search.best;
  for (std::size_t i = search.best_set.find_first(); i != Bits::npos; i = search.best_set.find_next(i))
    out.witness.push_back(static_cast<Vertex>(i));
  if (counter.exhausted()) {
    out.exact = false;
    out.upper = std::max(out.lower, search.bound(Bits(n), all));
  } else {
    out.upper = out.lower;
  }
  return out;
}

// ------------------------------------------------------------------------ TK

namespace {

class TkAssigner {
 public:
  TkAssigner(const Hypergraph& h, const PairIndex& index, NodeCounter& counter)
      : h_(h), index_(index), counter_(counter), used_(h.num_vertices(), 0) {}

  std::optional<Embedding> assign(const std::vector<Vertex>& core) {
    pairs_.clear();
    for (std::size_t i = 0; i < core.size(); ++i)
      for (std::size_t j = i + 1; j < core.size(); ++j) {
        Slot slot{core[i], core[j], {}};
        for (EdgeId e : index_.covering(core[i], core[j])) {
          bool clean = true;
          for (Vertex x : h_.edge(e))
            if (x != core[i] && x != core[j] && std::find(core.begin(), core.end(), x) != core.end()) clean = false;
          if (clean) slot.candidates.push_back(e);
        }
        if (slot.candidates.empty()) return std::nullopt;
        pairs_.push_back(std::move(slot));
      }
    std::vector<std::size_t> order(pairs_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pairs_[a].candidates.size() < pairs_[b].candidates.size();
    });
    choice_.assign(pairs_.size(), 0);
    for (Vertex c : core) used_[c] = 1;
    const bool ok = backtrack(order, 0);
    for (Vertex c : core) used_[c] = 0;
    if (!ok) return std::nullopt;

    Embedding emb;
    emb.host = core;
    emb.roles.assign(core.size(), Role::core);
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const auto ed = h_.edge(choice_[p]);
      for (Vertex x : ed)
        if (x != pairs_[p].a && x != pairs_[p].b) {
          emb.host.push_back(x);
          emb.roles.push_back(Role::subdivision);
        }
      emb.host_edges.push_back(sorted_edge(ed));
    }
    return emb;
  }

 private:
  struct Slot {
    Vertex a, b;
    std::vector<EdgeId> candidates;
  };

  bool backtrack(const std::vector<std::size_t>& order, std::size_t depth) {
    if (depth == order.size()) return true;
    if (!counter_.tick()) return false;
    const Slot& slot = pairs_[order[depth]];
    for (EdgeId e : slot.candidates) {
      bool fresh = true;
      for (Vertex x : h_.edge(e))
        if (x != slot.a && x != slot.b && used_[x]) fresh = false;
      if (!fresh) continue;
      for (Vertex x : h_.edge(e))
        if (x != slot.a && x != slot.b) used_[x] = 1;
      choice_[order[depth]] = e;
      if (backtrack(order, depth + 1)) {
        for (Vertex x : h_.edge(e))
          if (x != slot.a && x != slot.b) used_[x] = 0;
        return true;
      }
      for (Vertex x : h_.edge(e))
        if (x != slot.a && x != slot.b) used_[x] = 0;
      if (counter_.exhausted()) return false;
    }
    return false;
  }

  const Hypergraph& h_;
  const PairIndex& index_;
  NodeCounter& counter_;
  std::vector<char> used_;
  std::vector<Slot> pairs_;
  std::vector<EdgeId> choice_;
};

}  // namespace

PatternResult find_tk(const Hypergraph& h, int s, const SearchBudget& budget) {
  const int r = h.uniformity();
  if (r < 2 || s < 2) throw std::invalid_argument("find_tk needs s >= 2 and r >= 2");
  PatternResult out;
  const std::size_t n = h.num_vertices();
  const std::size_t needed = static_cast<std::size_t>(s) + static_cast<std::size_t>(s * (s - 1) / 2 * (r - 2));
  if (n < needed || h.num_edges() == 0) return out;

  const SimpleGraph sh = shadow(h);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto adj = adjacency_bits(sh, order);
  const PairIndex index(h);
  NodeCounter counter(budget);
  CliqueSearcher cliques(adj, counter);
  TkAssigner assigner(h, index, counter);
  Bits all(n);
  all.set();
  cliques.each(all, s, [&](const std::vector<std::size_t>& c) {
    std::vector<Vertex> core(c.begin(), c.end());
    std::sort(core.begin(), core.end());
    out.witness = assigner.assign(core);
    return out.witness.has_value() || counter.exhausted();
  });
  out.nodes = counter.nodes();
  if (out.witness)
    out.verdict = Verdict::violated;
  else if (counter.exhausted())
    out.verdict = Verdict::budget_exceeded;
  return out;
}

bool verify_tk(const Hypergraph& h, int s, const Embedding& e) {
  const int r = h.uniformity();
  const std::size_t pairs = static_cast<std::size_t>(s * (s - 1) / 2);
  if (e.host.size() != static_cast<std::size_t>(s) + pairs * static_cast<std::size_t>(r - 2)) return false;
  if (e.host_edges.size() != pairs || !e.injective()) return false;
  for (Vertex v : e.host)
    if (v >= h.num_vertices()) return false;
  const std::vector<Vertex> core(e.host.begin(), e.host.begin() + s);
  std::vector<int> seen(h.num_vertices(), 0);
  std::size_t p = 0;
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j, ++p) {
      std::vector<Vertex> ed = e.host_edges[p];
      std::sort(ed.begin(), ed.end());
      if (!h.contains(ed)) return false;
      int core_hits = 0;
      for (Vertex x : ed) {
        const bool is_core = std::find(core.begin(), core.end(), x) != core.end();
        if (is_core) {
          if (x != core[static_cast<std::size_t>(i)] && x != core[static_cast<std::size_t>(j)]) return false;
          ++core_hits;
        } else if (seen[x]++ > 0) {
          return false;
        }
      }
      if (core_hits != 2) return false;
    }
  return true;
}

// ----------------------------------------------------------------- TKF core

PatternResult find_tkf_core(const Hypergraph& h, int s, const SearchBudget& budget) {
  if (s < 2) throw std::invalid_argument("find_tkf_core needs s >= 2");
  PatternResult out = find_clique(shadow(h), s, budget);
  if (!out.witness) return out;
  const PairIndex index(h);
  auto& emb = *out.witness;
  emb.host_edges.clear();
  for (std::size_t i = 0; i < emb.host.size(); ++i)
    for (std::size_t j = i + 1; j < emb.host.size(); ++j)
      emb.host_edges.push_back(sorted_edge(h.edge(index.covering(emb.host[i], emb.host[j]).front())));
  return out;
}

bool verify_tkf_core(const Hypergraph& h, const std::vector<Vertex>& core) {
  for (std::size_t i = 0; i < core.size(); ++i)
    for (std::size_t j = i + 1; j < core.size(); ++j) {
      if (core[i] == core[j]) return false;
      bool covered = false;
      for (EdgeId e = 0; e < h.num_edges() && !covered; ++e) {
        const auto ed = h.edge(e);
        covered = std::find(ed.begin(), ed.end(), core[i]) != ed.end() &&
                  std::find(ed.begin(), ed.end(), core[j]) != ed.end();
      }
      if (!covered) return false;
    }
  return true;
}

// --------------------------------------------------------------- split core

PatternResult scan_split_core(const Hypergraph& h, const SearchBudget& budget) {
  if (!h.partitioned()) throw std::invalid_argument("scan_split_core needs part labels");
  PatternResult out;
  if (h.num_parts() < 2) return out;
  const SimpleGraph sh = shadow(h);
  const PairIndex index(h);
  NodeCounter counter(budget);
  std::vector<Vertex> common;
  for (Vertex a = 0; a < h.num_vertices(); ++a) {
    const int pi = h.part(a);
    if (pi == kNoPart) continue;
    for (Vertex b : sh.neighbors(a)) {
      if (b <= a || h.part(b) != pi) continue;
      if (!counter.tick()) {
        out.verdict = Verdict::budget_exceeded;
        out.nodes = counter.nodes();
        return out;
      }
      common.clear();
      std::set_intersection(sh.neighbors(a).begin(), sh.neighbors(a).end(), sh.neighbors(b).begin(),
                            sh.neighbors(b).end(), std::back_inserter(common));
      for (std::size_t i = 0; i < common.size(); ++i) {
        const Vertex c = common[i];
        const int pj = h.part(c);
        if (pj == kNoPart || pj <= pi) continue;
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          const Vertex d = common[j];
          if (h.part(d) != pj || !sh.adjacent(c, d)) continue;
          Embedding emb;
          emb.host = {a, b, c, d};
          emb.roles.assign(4, Role::core);
          for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t y = x + 1; y < 4; ++y)
              emb.host_edges.push_back(sorted_edge(h.edge(index.covering(emb.host[x], emb.host[y]).front())));
          out.witness = std::move(emb);
          out.verdict = Verdict::violated;
          out.nodes = counter.nodes();
          return out;
        }
      }
    }
  }
  out.nodes = counter.nodes();
  return out;
}

bool verify_split_core(const Hypergraph& h, const Embedding& e) {
  if (e.host.size() != 4 || !e.injective()) return false;
  const Vertex a = e.host[0], b = e.host[1], c = e.host[2], d = e.host[3];
  if (h.part(a) == kNoPart || h.part(c) == kNoPart) return false;
  if (h.part(a) != h.part(b) || h.part(c) != h.part(d) || h.part(a) == h.part(c)) return false;
  return verify_tkf_core(h, e.host);
}

// ------------------------------------------------------------ sparse scans

PatternResult scan_sparse_patterns(const Hypergraph& h, int ell, const SearchBudget& budget) {
  PatternResult out;
  if (h.num_edges() == 0) return out;
  SparsePatternScanner scanner(h, ell);
  NodeCounter counter(budget);
  const std::vector<char> alive(h.num_edges(), 1);
  try {
    for (EdgeId seed = 0; seed < h.num_edges(); ++seed) {
      auto hit = scanner.scan_seed(seed, alive, counter);
      if (!hit) continue;
      Embedding emb;
      std::map<Vertex, int> mult;
      for (EdgeId e : *hit) {
        emb.host_edges.push_back(sorted_edge(h.edge(e)));
        for (Vertex x : h.edge(e)) ++mult[x];
      }
      for (const auto& [x, m] : mult) {
        emb.host.push_back(x);
        emb.roles.push_back(m > 1 ? Role::core : Role::subdivision);
      }
      out.witness = std::move(emb);
      out.verdict = Verdict::violated;
      break;
    }
  } catch (const BudgetExceeded&) {
    out.verdict = Verdict::budget_exceeded;
  }
  out.nodes = counter.nodes();
  return out;
}

bool verify_sparse_pattern(const Hypergraph& h, int ell, const std::vector<std::vector<Vertex>>& edges) {
  const int r = h.uniformity();
  if (edges.empty()) return false;
  std::vector<Vertex> verts;
  for (const auto& e : edges) {
    std::vector<Vertex> s = e;
    std::sort(s.begin(), s.end());
    if (!h.contains(s)) return false;
    verts.insert(verts.end(), s.begin(), s.end());
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  // Connectivity by union-find over edges sharing a vertex.
  std::vector<std::size_t> root(edges.size());
  std::iota(root.begin(), root.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return root[x] == x ? x : root[x] = find(root[x]); };
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j)
      for (Vertex x : edges[i])
        if (std::find(edges[j].begin(), edges[j].end(), x) != edges[j].end()) root[find(i)] = find(j);
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (find(i) != find(0)) return false;
  const int v = static_cast<int>(verts.size());
  const int m = static_cast<int>(edges.size());
  return v <= ell && v < r + (r - 1) * (m - 1);
}

// ------------------------------------------------------------------ matchings

namespace {

/// Kuhn's augmenting paths on an explicit bipartite adjacency.
std::vector<int> kuhn_matching(const std::vector<std::vector<int>>& adj, std::size_t right) {
  std::vector<int> match_right(right, -1);
  std::vector<char> seen;
  std::function<bool(int)> augment = [&](int u) {
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      if (match_right[static_cast<std::size_t>(w)] < 0 || augment(match_right[static_cast<std::size_t>(w)])) {
        match_right[static_cast<std::size_t>(w)] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < adj.size(); ++u) {
    seen.assign(right, 0);
    augment(static_cast<int>(u));
  }
  return match_right;
}

FarMatching far_matching_any(const std::vector<std::uint32_t>& a1, const std::vector<std::uint32_t>& a2,
                             const SpherePartition& partition, double theta) {
  const double far = 2.0 - theta;
  std::vector<std::vector<int>> adj(a1.size());
  for (std::size_t i = 0; i < a1.size(); ++i)
    for (std::size_t j = 0; j < a2.size(); ++j)
      if (distance(partition.reps.at(a1[i]), partition.reps.at(a2[j])) >= far) adj[i].push_back(static_cast<int>(j));
  const auto match_right = kuhn_matching(adj, a2.size());
  FarMatching out;
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t j = 0; j < a2.size(); ++j)
    if (match_right[j] >= 0) idx.emplace_back(static_cast<std::size_t>(match_right[j]), j);
  std::sort(idx.begin(), idx.end());
  for (const auto& [i, j] : idx) out.pairs.emplace_back(a1[i], a2[j]);
  return out;
}

}  // namespace

FarMatching far_pair_matching(const std::vector<std::uint32_t>& a1, const std::vector<std::uint32_t>& a2,
                              const SpherePartition& partition, double theta) {
  if (a1.size() != a2.size()) throw std::invalid_argument("far_pair_matching needs |a1| = |a2|");
  return far_matching_any(a1, a2, partition, theta);
}

std::optional<std::vector<std::uint32_t>> tree_embedding(
    const std::vector<std::vector<std::uint32_t>>& sets, const std::vector<std::pair<int, int>>& tree,
    const SpherePartition& partition, double theta) {
  const int r = static_cast<int>(sets.size());
  if (r < 1) throw std::invalid_argument("tree_embedding needs at least one set");
  if (static_cast<int>(tree.size()) != r - 1) throw std::invalid_argument("tree must have r-1 edges");
  if (r == 1) {
    if (sets[0].empty()) return std::nullopt;
    return std::vector<std::uint32_t>{sets[0].front()};
  }
  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(r));
  for (const auto& [a, b] : tree) {
    if (a < 0 || b < 0 || a >= r || b >= r || a == b) throw std::invalid_argument("bad tree edge");
    nbr[static_cast<std::size_t>(a)].push_back(b);
    nbr[static_cast<std::size_t>(b)].push_back(a);
  }
  // Peel leaves (smallest index first) until one edge is left.
  std::vector<char> alive(static_cast<std::size_t>(r), 1);
  std::vector<int> degree(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) degree[static_cast<std::size_t>(i)] = static_cast<int>(nbr[static_cast<std::size_t>(i)].size());
  std::vector<std::pair<int, int>> peeled;  // (leaf, neighbour)
  for (int remaining = r; remaining > 2; --remaining) {
    int leaf = -1;
    for (int i = 0; i < r && leaf < 0; ++i)
      if (alive[static_cast<std::size_t>(i)] && degree[static_cast<std::size_t>(i)] == 1) leaf = i;
    if (leaf < 0) throw std::invalid_argument("tree edges do not form a tree");
    int parent = -1;
    for (int w : nbr[static_cast<std::size_t>(leaf)])
      if (alive[static_cast<std::size_t>(w)]) parent = w;
    alive[static_cast<std::size_t>(leaf)] = 0;
    --degree[static_cast<std::size_t>(parent)];
    peeled.emplace_back(leaf, parent);
  }
  int a = -1, b = -1;
  for (int i = 0; i < r; ++i)
    if (alive[static_cast<std::size_t>(i)]) (a < 0 ? a : b) = i;
  if (b < 0 || std::find(nbr[static_cast<std::size_t>(a)].begin(), nbr[static_cast<std::size_t>(a)].end(), b) ==
                   nbr[static_cast<std::size_t>(a)].end())
    throw std::invalid_argument("tree edges do not form a tree");

  std::vector<std::vector<std::int64_t>> embeddings;
  for (const auto& [p, q] : far_matching_any(sets[static_cast<std::size_t>(a)], sets[static_cast<std::size_t>(b)], partition, theta).pairs) {
    std::vector<std::int64_t> emb(static_cast<std::size_t>(r), -1);
    emb[static_cast<std::size_t>(a)] = p;
    emb[static_cast<std::size_t>(b)] = q;
    embeddings.push_back(std::move(emb));
  }
  for (auto it = peeled.rbegin(); it != peeled.rend() && !embeddings.empty(); ++it) {
    const auto [leaf, parent] = *it;
    std::vector<std::uint32_t> images;
    for (const auto& emb : embeddings) images.push_back(static_cast<std::uint32_t>(emb[static_cast<std::size_t>(parent)]));
    const auto m = far_matching_any(images, sets[static_cast<std::size_t>(leaf)], partition, theta);
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& [p, q] : m.pairs)
      for (const auto& emb : embeddings)
        if (emb[static_cast<std::size_t>(parent)] == p) {
          next.push_back(emb);
          next.back()[static_cast<std::size_t>(leaf)] = q;
          break;
        }
    embeddings = std::move(next);
  }
  if (embeddings.empty()) return std::nullopt;
  std::vector<std::uint32_t> out;
  for (auto x : embeddings.front()) out.push_back(static_cast<std::uint32_t>(x));
  return out;
}

// ------------------------------------------------------------------ density

namespace {

Comparison exact_cmp(std::string name, std::string rel, const Rational& measured, const Rational& bound,
                     bool asserted) {
  Comparison c;
  c.name = std::move(name);
  c.relation = std::move(rel);
  c.measured = measured;
  c.bound = bound;
  c.measured_approx = to_double(measured);
  c.bound_approx = to_double(bound);
  c.asserted = asserted;
  if (c.relation == "==") c.holds = measured == bound;
  else if (c.relation == "<=") c.holds = measured <= bound;
  else if (c.relation == ">=") c.holds = measured >= bound;
  return c;
}

Comparison approx_cmp(std::string name, std::string rel, double measured, double bound) {
  Comparison c;
  c.name = std::move(name);
  c.relation = std::move(rel);
  c.measured_approx = measured;
  c.bound_approx = bound;
  c.exact = false;
  c.asserted = false;
  if (c.relation == "<=") c.holds = measured <= bound;
  else if (c.relation == ">=") c.holds = measured >= bound;
  return c;
}

Rational pow2(long e) {
  Rational two(2);
  return e >= 0 ? pow(two, static_cast<unsigned>(e)) : Rational(1) / pow(two, static_cast<unsigned>(-e));
}

/// Cross pairs between parts counted edge by edge and vertex by vertex,
/// plus one info row per pair of parts.
void shadow_rows(const SimpleGraph& sh, int parts, std::vector<Comparison>& rows) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(std::max(parts, 0)), 0);
  for (Vertex v = 0; v < sh.num_vertices(); ++v)
    if (sh.part(v) >= 0 && sh.part(v) < parts) ++sizes[static_cast<std::size_t>(sh.part(v))];
  std::map<std::pair<int, int>, std::size_t> per_pair;
  std::size_t by_edges = 0;
  for (const auto& [a, b] : sh.edges()) {
    const int pa = sh.part(a), pb = sh.part(b);
    if (pa == kNoPart || pb == kNoPart || pa == pb) continue;
    ++by_edges;
    ++per_pair[{std::min(pa, pb), std::max(pa, pb)}];
  }
  std::size_t by_vertices = 0;
  for (Vertex v = 0; v < sh.num_vertices(); ++v) {
    if (sh.part(v) == kNoPart) continue;
    for (Vertex w : sh.neighbors(v))
      if (sh.part(w) != kNoPart && sh.part(w) != sh.part(v)) ++by_vertices;
  }
  rows.push_back(exact_cmp("shadow_cross_pairs_double_count", "==", Rational(by_edges) * 2,
                           Rational(by_vertices), true));
  for (int i = 0; i < parts; ++i)
    for (int j = i + 1; j < parts; ++j) {
      const std::size_t denom = sizes[static_cast<std::size_t>(i)] * sizes[static_cast<std::size_t>(j)];
      const Rational density = denom == 0 ? Rational(0) : Rational(per_pair[{i, j}]) / Rational(denom);
      auto c = exact_cmp("shadow_density_" + std::to_string(i) + "_" + std::to_string(j), "info", density,
                         Rational(1), false);
      rows.push_back(std::move(c));
    }
}

}  // namespace

VerificationReport density_report(const Hypergraph& h, const ConstructionInfo& info) {
  VerificationReport rep;
  rep.property = "density";
  auto& rows = rep.comparisons;
  const auto& p = info.params;
  const int r = h.uniformity() > 0 ? h.uniformity() : p.r;
  const int t = std::max(info.blowup_t, 1);
  const int u = p.u;
  const long z = static_cast<long>(p.z);

  std::size_t cross = 0, inside = 0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (h.is_cross(e)) ++cross;
    else if (h.is_inside(e)) ++inside;
  }
  rows.push_back(exact_cmp("vertices", "info", Rational(h.num_vertices()), Rational(h.num_vertices()), false));
  for (int i = 0; i < h.num_parts(); ++i) {
    const std::size_t size = h.part_vertices(i).size();
    rows.push_back(exact_cmp("part_" + std::to_string(i) + "_size_over_t", "<=", Rational(size) / Rational(t),
                             Rational(info.tuples_per_part), true));
  }
  // |V(H)| <= r 2^{-C(u,2)} z^u needs the p2 intersection bound; reported only.
  const Rational vbound = Rational(r) * pow2(-static_cast<long>(u * (u - 1) / 2)) * pow(Rational(z), static_cast<unsigned>(u));
  rows.push_back(exact_cmp("base_vertices_vs_r2^-C(u,2)z^u", "<=",
                           Rational(static_cast<long>(r) * static_cast<long>(info.tuples_per_part)), vbound, false));
  const int ru = r * u;
  const Rational ebound = pow2(-static_cast<long>(ru * (ru - 1) / 2)) * pow(Rational(z), static_cast<unsigned>(ru));
  rows.push_back(exact_cmp("base_cross_vs_2^-C(ru,2)z^ru", ">=", Rational(info.base_cross), ebound, false));

  Rational t_r = pow(Rational(t), static_cast<unsigned>(r));
  if (info.sampled) {
    rows.push_back(approx_cmp("cross_estimate", "info", info.cross_estimate.value, info.cross_estimate.half_width));
    rows.push_back(approx_cmp("inside_estimate", "info", info.inside_estimate.value, info.inside_estimate.half_width));
  } else {
    rows.push_back(exact_cmp("cross_blowup_identity", "==", Rational(cross), t_r * Rational(info.base_cross), true));
  }
  const std::size_t m = info.part_size > 0 ? info.part_size : info.tuples_per_part * static_cast<std::size_t>(t);
  const Rational gbound = pow2(static_cast<long>(r * u * (u - 1) / 2) - static_cast<long>(ru * (ru - 1) / 2)) *
                          pow(Rational(static_cast<long>(m)), static_cast<unsigned>(r));
  rows.push_back(exact_cmp("cross_vs_2^(rC(u,2)-C(ru,2))m^r", ">=", Rational(cross), gbound, false));
  rows.push_back(exact_cmp("inside_edges", "info", Rational(inside), Rational(info.base_inside), false));
  if (t > 1 && info.base_inside > 0) {
    const double blown = static_cast<double>(info.base_inside) * std::pow(static_cast<double>(t), r);
    rows.push_back(approx_cmp("inside_kept_fraction_vs_p", "info",
                              static_cast<double>(info.inside_blown_kept) / blown, info.blowup_p));
  }
  rows.push_back(exact_cmp("pattern_deletions", "info", Rational(info.pattern_deletions), Rational(0), false));
  shadow_rows(shadow(h), h.num_parts(), rows);

  for (const auto& c : rows)
    if (c.asserted && !c.holds) rep.verdict = Verdict::violated;
  return rep;
}

VerificationReport density_report(const SimpleGraph& g) {
  VerificationReport rep;
  rep.property = "density";
  auto& rows = rep.comparisons;
  rows.push_back(exact_cmp("vertices", "info", Rational(g.num_vertices()), Rational(g.num_vertices()), false));
  rows.push_back(exact_cmp("edges", "info", Rational(g.num_edges()), Rational(g.num_edges()), false));
  shadow_rows(g, g.num_parts(), rows);
  for (const auto& c : rows)
    if (c.asserted && !c.holds) rep.verdict = Verdict::violated;
  return rep;
}

}  // namespace rtlab
