#include "rtlab/drc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

#include "rtlab/rng.hpp"
#include "rtlab/verifiers.hpp"

namespace rtlab {

using Bits = boost::dynamic_bitset<>;

// ------------------------------------------------------------- graph form

Rational drc_lhs(const DrcParams& p, const Rational& d) {
  if (p.n == 0 || p.t == 0 || p.r == 0) throw std::invalid_argument("drc parameters must be positive");
  const Rational n(static_cast<long long>(p.n));
  const auto t = static_cast<unsigned>(p.t);
  const Rational first = pow(d, t) / pow(n, t - 1);
  const Rational second = Rational(binomial(p.n, p.r)) * pow(Rational(static_cast<long long>(p.m)) / n, t);
  return first - second;
}

bool drc_feasible(const DrcParams& p, const Rational& d) {
  if (p.a == 0 || p.m == 0) throw std::invalid_argument("drc parameters must be positive");
  return drc_lhs(p, d) >= Rational(static_cast<long long>(p.a));
}

Rational average_degree(const SimpleGraph& g) {
  if (g.num_vertices() == 0) return Rational(0);
  return Rational(2 * static_cast<long long>(g.num_edges()), static_cast<long long>(g.num_vertices()));
}

namespace {

std::size_t common_count(const SimpleGraph& g, const std::vector<Vertex>& subset) {
  std::vector<Vertex> common(g.neighbors(subset[0]).begin(), g.neighbors(subset[0]).end());
  std::vector<Vertex> next;
  for (std::size_t i = 1; i < subset.size() && !common.empty(); ++i) {
    next.clear();
    std::set_intersection(common.begin(), common.end(), g.neighbors(subset[i]).begin(),
                          g.neighbors(subset[i]).end(), std::back_inserter(next));
    common.swap(next);
  }
  return common.size();
}

/// Visits the r-subsets of `pool` in lexicographic order until visit
/// returns false.
void each_subset(const std::vector<Vertex>& pool, std::size_t r,
                 const std::function<bool(const std::vector<Vertex>&)>& visit) {
  if (r == 0 || r > pool.size()) return;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Vertex> cur(r);
  for (;;) {
    for (std::size_t i = 0; i < r; ++i) cur[i] = pool[idx[i]];
    if (!visit(cur)) return;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == pool.size() - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool verify_common_neighbourhoods(const SimpleGraph& g, const std::vector<Vertex>& u, std::size_t r, std::size_t m) {
  std::vector<Vertex> sorted = u;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  bool ok = true;
  each_subset(sorted, r, [&](const std::vector<Vertex>& s) {
    ok = common_count(g, s) >= m;
    return ok;
  });
  return ok;
}

DrcResult drc_find_set(const SimpleGraph& g, const DrcParams& params, std::uint64_t seed, bool require_feasible) {
  DrcParams p = params;
  if (p.n == 0) p.n = g.num_vertices();
  if (p.n != g.num_vertices()) throw std::invalid_argument("drc n differs from the graph order");
  if (p.a == 0 || p.m == 0 || p.r == 0 || p.t == 0) throw std::invalid_argument("drc parameters must be positive");
  if (require_feasible && !drc_feasible(p, average_degree(g)))
    throw std::invalid_argument("dependent random choice inequality fails for these parameters");
  DrcResult out;
  if (g.num_vertices() == 0) {
    out.failure = "empty graph";
    return out;
  }
  const std::size_t r = static_cast<std::size_t>(p.r);
  for (int trial = 0; trial < p.retries; ++trial) {
    out.trials = trial + 1;
    Rng rng = derive_rng(seed, "drc_find_set", static_cast<std::uint64_t>(trial));
    std::vector<Vertex> common;
    for (std::uint64_t i = 0; i < p.t; ++i) {
      const auto v = static_cast<Vertex>(rng.below(g.num_vertices()));
      const auto nb = g.neighbors(v);
      if (i == 0) {
        common.assign(nb.begin(), nb.end());
      } else {
        std::vector<Vertex> next;
        std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(), std::back_inserter(next));
        common.swap(next);
      }
    }
    std::vector<char> dropped(g.num_vertices(), 0);
    each_subset(common, r, [&](const std::vector<Vertex>& s) {
      for (Vertex v : s)
        if (dropped[v]) return true;
      if (common_count(g, s) < p.m) dropped[s.back()] = 1;
      return true;
    });
    std::vector<Vertex> u;
    for (Vertex v : common)
      if (!dropped[v]) u.push_back(v);
    if (u.size() < p.a) continue;
    if (!verify_common_neighbourhoods(g, u, r, static_cast<std::size_t>(p.m))) continue;
    out.success = true;
    out.set = std::move(u);
    return out;
  }
  out.failure = "retry budget exhausted";
  return out;
}

// -------------------------------------------------------- hypergraph form

namespace {

/// Edges containing w whose other vertices are one per part 1..r-1, with w
/// removed, as sorted vertex lists.
std::vector<std::vector<Vertex>> link_of(const Hypergraph& h, Vertex w) {
  std::vector<std::vector<Vertex>> out;
  const int r = h.uniformity();
  for (EdgeId e : h.incident(w)) {
    std::vector<Vertex> rest;
    std::vector<char> seen(static_cast<std::size_t>(r), 0);
    bool ok = true;
    for (Vertex x : h.edge(e)) {
      if (x == w) continue;
      const int p = h.part(x);
      if (p <= 0 || p >= r || seen[static_cast<std::size_t>(p)]) {
        ok = false;
        break;
      }
      seen[static_cast<std::size_t>(p)] = 1;
      rest.push_back(x);
    }
    if (ok) out.push_back(std::move(rest));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

HyperDrc hyper_drc(const Hypergraph& g_r, int s, std::uint64_t seed) {
  const int r = g_r.uniformity();
  if (r < 3) throw std::invalid_argument("hyper_drc needs r >= 3");
  if (s < 1) throw std::invalid_argument("hyper_drc needs s >= 1");
  if (g_r.num_parts() < r) throw std::invalid_argument("hyper_drc needs r part labels");
  const auto v1 = g_r.part_vertices(0);
  if (v1.empty()) throw std::invalid_argument("hyper_drc: part 0 is empty");

  HyperDrc out;
  Rng rng = derive_rng(seed, "hyper_drc");
  for (int i = 0; i < s; ++i) out.samples.push_back(v1[rng.below(v1.size())]);
  std::vector<std::vector<Vertex>> common = link_of(g_r, out.samples[0]);
  for (int i = 1; i < s && !common.empty(); ++i) {
    const auto link = link_of(g_r, out.samples[static_cast<std::size_t>(i)]);
    std::vector<std::vector<Vertex>> next;
    std::set_intersection(common.begin(), common.end(), link.begin(), link.end(), std::back_inserter(next));
    common.swap(next);
  }
  std::vector<int> parts(g_r.parts().begin(), g_r.parts().end());
  out.hypergraph = Hypergraph::from_edges(g_r.num_vertices(), r - 1, common, std::move(parts), g_r.num_parts());

  double n_part = static_cast<double>(v1.size());
  std::size_t cross = 0;
  for (EdgeId e = 0; e < g_r.num_edges(); ++e) cross += g_r.is_cross(e) ? 1 : 0;
  out.measured_epsilon = static_cast<double>(cross) / std::pow(n_part, r);
  out.edge_target = 0.5 * std::pow(out.measured_epsilon, s) * std::pow(n_part, r - 1);
  return out;
}

DangerousCount count_dangerous_sets(const Hypergraph& g_r, const Hypergraph& reduced, int weight, const DrcParams& p,
                                    const SearchBudget& budget) {
  if (weight < 1 || weight > 6) throw std::invalid_argument("dangerous-set census supports weights 1..6");
  const int r = g_r.uniformity();
  const auto v1 = g_r.part_vertices(0);
  const std::size_t n_part = p.N > 0 ? p.N : v1.size();
  const double limit = p.beta * static_cast<double>(n_part);

  // ext[e]: vertices of part 0 extending edge e of the reduced hypergraph.
  std::vector<Bits> ext(reduced.num_edges(), Bits(v1.size()));
  for (EdgeId e = 0; e < reduced.num_edges(); ++e) {
    const auto ed = reduced.edge(e);
    for (std::size_t i = 0; i < v1.size(); ++i) {
      std::vector<Vertex> full(ed.begin(), ed.end());
      full.push_back(v1[i]);
      std::sort(full.begin(), full.end());
      if (g_r.contains(full)) ext[e].set(i);
    }
  }

  DangerousCount out;
  out.weight = weight;
  NodeCounter counter(budget);
  std::vector<int> mult(reduced.num_vertices(), 0);
  int used = 0;
  std::function<void(EdgeId, int, const Bits&)> rec = [&](EdgeId from, int size, const Bits& common) {
    for (EdgeId e = from; e < reduced.num_edges(); ++e) {
      if (!counter.tick()) {
        out.complete = false;
        return;
      }
      int added = 0;
      for (Vertex x : reduced.edge(e)) added += mult[x] == 0 ? 1 : 0;
      if (used + added > weight) continue;
      for (Vertex x : reduced.edge(e)) ++mult[x];
      used += added;
      const Bits next = common & ext[e];
      if (used == weight) {
        ++out.examined;
        if (static_cast<double>(next.count()) < limit) ++out.dangerous;
      }
      if (size + 1 < p.delta) rec(e + 1, size + 1, next);
      used -= added;
      for (Vertex x : reduced.edge(e)) --mult[x];
      if (!out.complete) return;
    }
  };
  Bits all(v1.size());
  all.set();
  rec(0, 0, all);

  const double eps = p.epsilon > 0 ? p.epsilon : 1.0;
  out.log2_bound = std::log2(4.0 * r * p.delta) - p.s * std::log2(eps) +
                   (p.beta > 0 ? p.s * std::log2(p.beta) : -INFINITY) +
                   r * p.delta * std::log2(static_cast<double>(weight)) + weight * std::log2(static_cast<double>(r)) +
                   weight * std::log2(static_cast<double>(std::max<std::size_t>(n_part, 1)));
  return out;
}

// ------------------------------------------------------------- witnesses

namespace {

struct ThreeParts {
  Hypergraph h;
  std::array<std::vector<Vertex>, 3> part;
};

ThreeParts three_partition(const Hypergraph& h, Rng& rng) {
  ThreeParts out;
  if (h.num_parts() == 3) {
    out.h = h;
  } else {
    std::vector<Vertex> order(h.num_vertices());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> labels(h.num_vertices());
    const auto sizes = balanced_part_sizes(h.num_vertices(), 3);
    std::size_t pos = 0;
    for (int p = 0; p < 3; ++p)
      for (std::size_t i = 0; i < sizes[static_cast<std::size_t>(p)]; ++i) labels[order[pos++]] = p;
    out.h = h.with_parts(std::move(labels), 3);
  }
  for (int p = 0; p < 3; ++p) out.part[static_cast<std::size_t>(p)] = out.h.part_vertices(p);
  return out;
}

bool has_edge(const Hypergraph& h, Vertex a, Vertex b, Vertex c) {
  std::array<Vertex, 3> e{a, b, c};
  std::sort(e.begin(), e.end());
  return h.contains(e);
}

/// Edges of h inside `pool` (sorted), lexicographic.
std::vector<std::array<Vertex, 3>> edges_inside(const Hypergraph& h, const std::vector<Vertex>& pool) {
  std::vector<std::array<Vertex, 3>> out;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j)
      for (std::size_t k = j + 1; k < pool.size(); ++k)
        if (has_edge(h, pool[i], pool[j], pool[k])) out.push_back({pool[i], pool[j], pool[k]});
  return out;
}

/// Assigns to every core pair an edge of h whose third vertex is fresh.
/// `fixed` pairs come with their edge already chosen.
std::optional<Embedding> subdivide(const Hypergraph& h, const std::vector<Vertex>& core,
                                   const std::vector<std::pair<std::pair<std::size_t, std::size_t>, Vertex>>& fixed) {
  const std::size_t s = core.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j) pairs.emplace_back(i, j);
  std::vector<std::int64_t> third(pairs.size(), -1);
  std::vector<char> used(h.num_vertices(), 0);
  for (Vertex c : core) used[c] = 1;
  for (const auto& [pr, v] : fixed) {
    const auto it = std::find(pairs.begin(), pairs.end(), pr);
    if (used[v]) return std::nullopt;
    used[v] = 1;
    third[static_cast<std::size_t>(it - pairs.begin())] = v;
  }
  std::vector<std::vector<Vertex>> candidates(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (third[p] >= 0) continue;
    const Vertex a = core[pairs[p].first], b = core[pairs[p].second];
    const auto inc = h.degree(a) <= h.degree(b) ? h.incident(a) : h.incident(b);
    for (EdgeId e : inc) {
      const auto ed = h.edge(e);
      if (std::find(ed.begin(), ed.end(), a) == ed.end() || std::find(ed.begin(), ed.end(), b) == ed.end()) continue;
      for (Vertex x : ed)
        if (x != a && x != b && std::find(core.begin(), core.end(), x) == core.end()) candidates[p].push_back(x);
    }
    if (candidates[p].empty()) return std::nullopt;
  }
  std::vector<std::size_t> open;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (third[p] < 0) open.push_back(p);
  std::stable_sort(open.begin(), open.end(),
                   [&](std::size_t a, std::size_t b) { return candidates[a].size() < candidates[b].size(); });
  std::function<bool(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == open.size()) return true;
    const std::size_t p = open[depth];
    for (Vertex x : candidates[p]) {
      if (used[x]) continue;
      used[x] = 1;
      third[p] = x;
      if (rec(depth + 1)) return true;
      used[x] = 0;
    }
    third[p] = -1;
    return false;
  };
  if (!rec(0)) return std::nullopt;

  Embedding emb;
  emb.host = core;
  emb.roles.assign(s, Role::core);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto x = static_cast<Vertex>(third[p]);
    emb.host.push_back(x);
    emb.roles.push_back(Role::subdivision);
    std::vector<Vertex> ed{core[pairs[p].first], core[pairs[p].second], x};
    std::sort(ed.begin(), ed.end());
    emb.host_edges.push_back(std::move(ed));
  }
  return emb;
}

std::optional<Embedding> extend_tk6(const Hypergraph& h, const FWitness& f) {
  // Core x_i, x_j, y_k, y_l, z_m, z_n; the leftover vertex of each part edge
  // subdivides the inside pair.
  const std::array<std::array<int, 3>, 3> choice{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
  for (const auto& cx : choice)
    for (const auto& cy : choice)
      for (const auto& cz : choice) {
        const std::vector<Vertex> core{f.x[static_cast<std::size_t>(cx[0])], f.x[static_cast<std::size_t>(cx[1])],
                                       f.y[static_cast<std::size_t>(cy[0])], f.y[static_cast<std::size_t>(cy[1])],
                                       f.z[static_cast<std::size_t>(cz[0])], f.z[static_cast<std::size_t>(cz[1])]};
        const std::vector<std::pair<std::pair<std::size_t, std::size_t>, Vertex>> fixed{
            {{0, 1}, f.x[static_cast<std::size_t>(cx[2])]},
            {{2, 3}, f.y[static_cast<std::size_t>(cy[2])]},
            {{4, 5}, f.z[static_cast<std::size_t>(cz[2])]}};
        if (auto emb = subdivide(h, core, fixed)) return emb;
      }
  return std::nullopt;
}

}  // namespace

bool verify_f_witness(const Hypergraph& h, const FWitness& f) {
  if (h.uniformity() != 3) return false;
  std::vector<Vertex> all;
  for (const auto* part : {&f.x, &f.y, &f.z}) all.insert(all.end(), part->begin(), part->end());
  for (Vertex v : all)
    if (v >= h.num_vertices()) return false;
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
  if (!has_edge(h, f.x[0], f.x[1], f.x[2]) || !has_edge(h, f.y[0], f.y[1], f.y[2]) ||
      !has_edge(h, f.z[0], f.z[1], f.z[2]))
    return false;
  for (Vertex a : f.x)
    for (Vertex b : f.y)
      for (Vertex c : f.z)
        if (!has_edge(h, a, b, c)) return false;
  if (f.tk6 && !verify_tk(h, 6, *f.tk6)) return false;
  return true;
}

FResult find_f_witness(const Hypergraph& h, const FSearchOptions& options) {
  if (h.uniformity() != 3) throw std::invalid_argument("find_f_witness needs a 3-uniform hypergraph");
  FResult out;
  if (h.num_edges() == 0) {
    out.failed_stage = "partition";
    return out;
  }
  const int retries = std::max(options.drc.retries, 1);
  std::string last = "partition";
  for (int trial = 0; trial < retries; ++trial) {
    out.trials = trial + 1;
    Rng rng = derive_rng(options.seed, "find_f_witness", static_cast<std::uint64_t>(trial));
    const ThreeParts tp = three_partition(h, rng);
    const Hypergraph cross = tp.h.filter([&](EdgeId e) { return tp.h.is_cross(e); });
    if (cross.num_edges() == 0) {
      last = "partition";
      continue;
    }
    const CleanResult cleaned = clean_low_codegree(cross, options.drc.codegree_threshold);
    const Hypergraph& hp = cleaned.hypergraph;
    if (hp.num_edges() == 0) {
      last = "clean";
      continue;
    }
    const HyperDrc reduced = hyper_drc(hp, options.drc.s, rng());
    if (reduced.hypergraph.num_edges() == 0) {
      last = "hyper_drc";
      continue;
    }
    // The auxiliary graph on V_2 u V_3, renumbered.
    std::vector<Vertex> side;
    side.insert(side.end(), tp.part[1].begin(), tp.part[1].end());
    side.insert(side.end(), tp.part[2].begin(), tp.part[2].end());
    std::sort(side.begin(), side.end());
    std::vector<std::int64_t> pos(h.num_vertices(), -1);
    for (std::size_t i = 0; i < side.size(); ++i) pos[side[i]] = static_cast<std::int64_t>(i);
    std::vector<std::pair<Vertex, Vertex>> ge;
    for (EdgeId e = 0; e < reduced.hypergraph.num_edges(); ++e) {
      const auto ed = reduced.hypergraph.edge(e);
      ge.emplace_back(static_cast<Vertex>(pos[ed[0]]), static_cast<Vertex>(pos[ed[1]]));
    }
    const SimpleGraph g = SimpleGraph::from_edges(side.size(), std::move(ge));

    DrcParams dp = options.drc;
    dp.n = 0;
    dp.retries = 1;
    const DrcResult u = drc_find_set(g, dp, rng(), options.feasibility_gate);
    if (!u.success) {
      last = "drc";
      continue;
    }
    std::vector<Vertex> in2, in3;
    for (Vertex v : u.set) (tp.h.part(side[v]) == 2 ? in3 : in2).push_back(side[v]);
    const std::vector<Vertex>& u_prime = in3.size() >= in2.size() ? in3 : in2;
    const auto e3s = edges_inside(h, u_prime);
    if (e3s.empty()) {
      last = "E3";
      continue;
    }
    bool any_e2 = false;
    for (const auto& e3 : e3s) {
      // Common neighbours of E3 in the auxiliary graph.
      std::vector<Vertex> common;
      for (std::size_t i = 0; i < side.size(); ++i) {
        bool all = true;
        for (Vertex z : e3) all = all && g.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(pos[z]));
        if (all) common.push_back(side[i]);
      }
      const auto e2s = edges_inside(h, common);
      any_e2 = any_e2 || !e2s.empty();
      for (const auto& e2 : e2s) {
        std::vector<Vertex> ext;
        for (Vertex v : tp.part[0]) {
          bool all = true;
          for (Vertex y : e2)
            for (Vertex z : e3) all = all && has_edge(h, v, y, z);
          if (all) ext.push_back(v);
        }
        const auto e1s = edges_inside(h, ext);
        for (const auto& e1 : e1s) {
          FWitness f;
          f.x = e1;
          f.y = e2;
          f.z = e3;
          f.edges.push_back({e1.begin(), e1.end()});
          f.edges.push_back({e2.begin(), e2.end()});
          f.edges.push_back({e3.begin(), e3.end()});
          for (Vertex a : e1)
            for (Vertex b : e2)
              for (Vertex c : e3) {
                std::vector<Vertex> ed{a, b, c};
                std::sort(ed.begin(), ed.end());
                f.edges.push_back(std::move(ed));
              }
          f.tk6 = extend_tk6(h, f);
          if (!verify_f_witness(h, f)) continue;
          out.witness = std::move(f);
          out.failed_stage.clear();
          return out;
        }
      }
    }
    last = any_e2 ? "E1" : "E2";
  }
  out.failed_stage = last;
  return out;
}

TkfResult find_tkf5_tk4(const Hypergraph& h, std::size_t codegree_threshold, std::uint64_t seed) {
  if (h.uniformity() != 3) throw std::invalid_argument("find_tkf5_tk4 needs a 3-uniform hypergraph");
  TkfResult out;
  Rng rng = derive_rng(seed, "find_tkf5_tk4");
  const ThreeParts tp = three_partition(h, rng);
  const Hypergraph cross = tp.h.filter([&](EdgeId e) { return tp.h.is_cross(e); });
  const Hypergraph hp = clean_low_codegree(cross, codegree_threshold).hypergraph;
  if (hp.num_edges() == 0) {
    out.failure = "no cross edges survive codegree cleaning";
    return out;
  }
  // Cross pairs by codegree, largest first, lexicographic among equals.
  std::map<std::pair<Vertex, Vertex>, std::vector<Vertex>> thirds;
  for (EdgeId e = 0; e < hp.num_edges(); ++e) {
    const auto ed = hp.edge(e);
    thirds[{ed[0], ed[1]}].push_back(ed[2]);
    thirds[{ed[0], ed[2]}].push_back(ed[1]);
    thirds[{ed[1], ed[2]}].push_back(ed[0]);
  }
  std::vector<std::pair<std::pair<Vertex, Vertex>, std::vector<Vertex>>> ranked(thirds.begin(), thirds.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second.size() > b.second.size(); });
  for (auto& [xy, z] : ranked) {
    std::sort(z.begin(), z.end());
    const auto inside = edges_inside(h, z);
    if (inside.empty()) continue;
    const auto& e = inside.front();
    out.x = xy.first;
    out.y = xy.second;
    out.codegree = z.size();

    Embedding tkf;
    tkf.host = {xy.first, xy.second, e[0], e[1], e[2]};
    tkf.roles.assign(5, Role::core);
    for (Vertex v : e) {
      std::vector<Vertex> ed{xy.first, xy.second, v};
      std::sort(ed.begin(), ed.end());
      tkf.host_edges.push_back(std::move(ed));
    }
    tkf.host_edges.push_back({e.begin(), e.end()});
    if (!verify_tkf_core(h, tkf.host)) continue;
    out.tkf5 = std::move(tkf);

    const std::array<std::array<int, 3>, 3> choice{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
    for (const auto& c : choice) {
      const std::vector<Vertex> core{xy.first, xy.second, e[static_cast<std::size_t>(c[0])],
                                     e[static_cast<std::size_t>(c[1])]};
      auto tk = subdivide(h, core, {{{2, 3}, e[static_cast<std::size_t>(c[2])]}});
      if (tk && verify_tk(h, 4, *tk)) {
        out.tk4 = std::move(tk);
        break;
      }
    }
    if (!out.tk4) out.failure = "TK(4,3) extension failed";
    return out;
  }
  out.failure = "no qualifying pair spans an edge in its third vertices";
  return out;
}

// -------------------------------------------------------------- thresholds

Tk6Thresholds tk6_thresholds(double log2_n, double gamma) {
  if (!(log2_n >= 1)) throw std::invalid_argument("tk6_thresholds needs n >= 2");
  if (!(gamma > 0)) throw std::invalid_argument("tk6_thresholds needs gamma > 0");
  constexpr int r = 3, delta = 9, w = 6;
  Tk6Thresholds out;
  out.log2_n = log2_n;
  out.gamma = gamma;
  const double cube_root = std::cbrt(log2_n);
  out.log2_beta = -gamma * cube_root * cube_root;
  out.beta = std::exp2(out.log2_beta);
  out.s = (w + 1) / gamma * cube_root;
  out.log2_epsilon = -gamma * gamma * cube_root / 4;
  out.epsilon = std::exp2(out.log2_epsilon);
  out.c = BigInt(4 * r * delta) * boost::multiprecision::pow(BigInt(w), r * delta) *
          boost::multiprecision::pow(BigInt(r), w);
  out.b = 9 * out.c;
  const double log2_b = std::log2(out.b.convert_to<double>());
  const double main = log2_b + 3 * log2_n - gamma * gamma * gamma / 28;
  const double tail = std::log2(144.0) + 2 * log2_n;
  const double hi = std::max(main, tail), lo = std::min(main, tail);
  out.log2_edge_threshold = hi + std::log2(1 + std::exp2(lo - hi));
  return out;
}

}  // namespace rtlab
