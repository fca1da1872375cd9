#include "rtlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "rtlab/sparse_scan.hpp"
#include "rtlab/verifiers.hpp"

namespace rtlab {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

struct RepGeometry {
  std::size_t z = 0;
  std::vector<char> close;  // d <= sqrt2 - theta
  std::vector<char> far;    // d >= 2 - theta

  RepGeometry(const SpherePartition& partition, double theta) : z(partition.reps.size()) {
    close.assign(z * z, 0);
    far.assign(z * z, 0);
    const double near_cut = kSqrt2 - theta;
    const double far_cut = 2.0 - theta;
    for (std::size_t i = 0; i < z; ++i)
      for (std::size_t j = 0; j < z; ++j) {
        const double d = i == j ? 0.0 : distance(partition.reps[i], partition.reps[j]);
        close[i * z + j] = d <= near_cut;
        far[i * z + j] = d >= far_cut;
      }
  }
  bool is_close(std::uint32_t a, std::uint32_t b) const { return close[a * z + b] != 0; }
  bool is_far(std::uint32_t a, std::uint32_t b) const { return far[a * z + b] != 0; }
};

bool tuples_far(const RepGeometry& geo, const TupleVertex& a, const TupleVertex& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (geo.is_far(a[j], b[j])) return true;
  return false;
}

bool tuples_compatible(const RepGeometry& geo, const TupleVertex& a, const TupleVertex& b) {
  for (std::uint32_t x : a)
    for (std::uint32_t y : b)
      if (!geo.is_close(x, y)) return false;
  return true;
}

std::vector<std::uint32_t> intersect(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// r-cliques (as increasing index lists) of a graph given by sorted
/// higher-neighbour lists.
void cliques_up(const std::vector<std::vector<std::uint32_t>>& up, int r, NodeCounter& counter,
                std::vector<std::uint32_t>& flat) {
  std::vector<std::uint32_t> chosen;
  std::function<void(const std::vector<std::uint32_t>&)> rec = [&](const std::vector<std::uint32_t>& cand) {
    if (!counter.tick()) throw BudgetExceeded("inside-edge enumeration exceeded its node budget");
    if (static_cast<int>(chosen.size()) == r) {
      flat.insert(flat.end(), chosen.begin(), chosen.end());
      return;
    }
    for (std::uint32_t v : cand) {
      chosen.push_back(v);
      rec(intersect(cand, up[v]));
      chosen.pop_back();
    }
  };
  for (std::uint32_t v = 0; v < up.size(); ++v) {
    chosen.assign(1, v);
    if (r == 1) {
      flat.push_back(v);
      continue;
    }
    rec(up[v]);
  }
}

}  // namespace

// ------------------------------------------------------------------ params

ConstructionParams ConstructionParams::make(int r, std::size_t z, double epsilon, int k, int blowup_t,
                                            double gamma, std::uint64_t seed) {
  ConstructionParams p;
  p.r = r;
  p.z = z;
  p.epsilon = epsilon;
  p.k = k;
  p.theta = epsilon / std::sqrt(static_cast<double>(k));
  p.u = (r + 1) / 2;
  p.blowup_t = blowup_t;
  p.gamma = gamma;
  p.pattern_cap = r * r * r;
  p.seed = seed;
  return p;
}

void ConstructionParams::validate() const {
  if (r < 2) throw std::invalid_argument("r must be >= 2");
  if (z < 1) throw std::invalid_argument("z must be >= 1");
  if (!(alpha > 0 && alpha < 1) || !(beta > 0 && beta < 1)) throw std::invalid_argument("alpha, beta must lie in (0,1)");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (std::abs(theta - epsilon / std::sqrt(static_cast<double>(k))) > 1e-12)
    throw std::invalid_argument("theta must equal epsilon / sqrt(k)");
  if (u != (r + 1) / 2) throw std::invalid_argument("u must equal ceil(r/2)");
  if (blowup_t < 1) throw std::invalid_argument("blowup_t must be >= 1");
  if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("gamma must lie in (0,1)");
  if (pattern_cap < r) throw std::invalid_argument("pattern_cap must be >= r");
}

double ConstructionParams::blowup_probability() const {
  return std::pow(static_cast<double>(blowup_t), 1.0 + gamma - r);
}

// ----------------------------------------------------------- base graphs

SimpleGraph bollobas_erdos(const SpherePartition& partition, double epsilon, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const double theta = epsilon / std::sqrt(static_cast<double>(k));
  const std::size_t z = partition.reps.size();
  const RepGeometry geo(partition, theta);
  std::vector<std::pair<Vertex, Vertex>> es;
  for (std::uint32_t i = 0; i < z; ++i)
    for (std::uint32_t j = 0; j < z; ++j) {
      if (i < j && geo.is_far(i, j)) {
        es.emplace_back(i, j);
        es.emplace_back(static_cast<Vertex>(z + i), static_cast<Vertex>(z + j));
      }
      if (geo.is_close(i, j)) es.emplace_back(i, static_cast<Vertex>(z + j));
    }
  SimpleGraph g = SimpleGraph::from_edges(2 * z, std::move(es));
  for (Vertex v = 0; v < 2 * z; ++v) g.set_part(v, v < z ? 0 : 1);
  g.set_num_parts(2);
  return g;
}

std::vector<TupleVertex> tuple_vertices(const SpherePartition& partition, int u, double theta) {
  if (u < 1) throw std::invalid_argument("u must be >= 1");
  const RepGeometry geo(partition, theta);
  const auto z = static_cast<std::uint32_t>(partition.reps.size());
  std::vector<TupleVertex> out;
  TupleVertex cur;
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == u) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t p = 0; p < z; ++p) {
      bool ok = true;
      for (std::uint32_t q : cur) ok = ok && geo.is_close(p, q);
      if (!ok) continue;
      cur.push_back(p);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

// ------------------------------------------------------ sphere hypergraph

SphereHypergraph sphere_hypergraph(const ConstructionParams& params, const SpherePartition& partition,
                                   const SphereHypergraphOptions& options) {
  if (params.r < 2) throw std::invalid_argument("sphere_hypergraph needs r >= 2");
  if (params.u < 1) throw std::invalid_argument("sphere_hypergraph needs u >= 1");
  const int r = params.r;
  SphereHypergraph out;
  out.tuples = tuple_vertices(partition, params.u, params.theta);
  const std::size_t nv = out.tuples.size();
  if (!options.sampled && nv > options.vertex_cap)
    throw std::length_error("sphere_hypergraph: " + std::to_string(nv) + " vertices per part exceed the cap of " +
                            std::to_string(options.vertex_cap));
  const RepGeometry geo(partition, params.theta);

  std::vector<int> parts(nv * static_cast<std::size_t>(r));
  for (std::size_t v = 0; v < parts.size(); ++v) parts[v] = static_cast<int>(v / std::max<std::size_t>(nv, 1));

  auto& info = out.info;
  info.type = "sphere";
  info.params = params;
  info.tuples_per_part = nv;
  info.sampled = options.sampled;
  info.part_size = nv;

  std::vector<Vertex> flat;
  if (!options.sampled) {
    NodeCounter counter(options.budget);
    std::vector<std::vector<std::uint32_t>> far_up(nv), compat(nv);
    for (std::uint32_t a = 0; a < nv; ++a)
      for (std::uint32_t b = 0; b < nv; ++b) {
        if (b > a && tuples_far(geo, out.tuples[a], out.tuples[b])) far_up[a].push_back(b);
        if (tuples_compatible(geo, out.tuples[a], out.tuples[b])) compat[a].push_back(b);
      }
    std::vector<std::uint32_t> inside;
    cliques_up(far_up, r, counter, inside);
    for (int i = 0; i < r; ++i)
      for (std::uint32_t x : inside) flat.push_back(static_cast<Vertex>(static_cast<std::size_t>(i) * nv + x));
    info.base_inside = flat.size() / static_cast<std::size_t>(r);

    // Cross: ordered choices, one tuple per part, pairwise compatible.
    std::vector<std::uint32_t> chosen;
    std::size_t cross = 0;
    std::function<void(const std::vector<std::uint32_t>&)> rec = [&](const std::vector<std::uint32_t>& cand) {
      if (!counter.tick()) throw BudgetExceeded("cross-edge enumeration exceeded its node budget");
      const std::size_t level = chosen.size();
      if (static_cast<int>(level) == r) {
        for (std::size_t i = 0; i < level; ++i) flat.push_back(static_cast<Vertex>(i * nv + chosen[i]));
        ++cross;
        return;
      }
      for (std::uint32_t v : cand) {
        chosen.push_back(v);
        rec(static_cast<int>(level) + 1 == r ? cand : intersect(cand, compat[v]));
        chosen.pop_back();
      }
    };
    for (std::uint32_t v = 0; v < nv; ++v) {
      chosen.assign(1, v);
      if (r == 1) continue;
      rec(compat[v]);
    }
    info.base_cross = cross;
    info.cross_estimate = {static_cast<double>(cross), 0};
    info.inside_estimate = {static_cast<double>(info.base_inside), 0};
  } else {
    Rng rng = derive_rng(params.seed, "sphere_hypergraph.sample");
    const std::size_t s = std::max<std::size_t>(options.samples, 1);
    std::unordered_set<std::uint64_t> seen;
    auto key = [&](const std::vector<Vertex>& e) {
      std::uint64_t h = 1469598103934665603ULL;
      for (Vertex x : e) h = splitmix64(h ^ x);
      return h;
    };
    std::size_t inside_hits = 0, cross_hits = 0;
    std::vector<Vertex> e(static_cast<std::size_t>(r));
    if (nv >= static_cast<std::size_t>(r)) {
      for (std::size_t i = 0; i < s; ++i) {
        std::vector<std::uint32_t> pick;
        while (static_cast<int>(pick.size()) < r) {
          const auto x = static_cast<std::uint32_t>(rng.below(nv));
          if (std::find(pick.begin(), pick.end(), x) == pick.end()) pick.push_back(x);
        }
        bool ok = true;
        for (std::size_t a = 0; a < pick.size() && ok; ++a)
          for (std::size_t b = a + 1; b < pick.size() && ok; ++b) ok = tuples_far(geo, out.tuples[pick[a]], out.tuples[pick[b]]);
        if (!ok) continue;
        ++inside_hits;
        const auto part = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(r)));
        for (std::size_t a = 0; a < pick.size(); ++a) e[a] = static_cast<Vertex>(part * nv + pick[a]);
        std::sort(e.begin(), e.end());
        if (seen.insert(key(e)).second) flat.insert(flat.end(), e.begin(), e.end());
      }
    }
    if (nv > 0) {
      for (std::size_t i = 0; i < s; ++i) {
        std::vector<std::uint32_t> pick(static_cast<std::size_t>(r));
        for (auto& x : pick) x = static_cast<std::uint32_t>(rng.below(nv));
        bool ok = true;
        for (std::size_t a = 0; a < pick.size() && ok; ++a)
          for (std::size_t b = a + 1; b < pick.size() && ok; ++b) ok = tuples_compatible(geo, out.tuples[pick[a]], out.tuples[pick[b]]);
        if (!ok) continue;
        ++cross_hits;
        for (std::size_t a = 0; a < pick.size(); ++a) e[a] = static_cast<Vertex>(a * nv + pick[a]);
        if (seen.insert(key(e)).second) flat.insert(flat.end(), e.begin(), e.end());
      }
    }
    auto estimate = [&](std::size_t hits, double total) {
      const double ph = static_cast<double>(hits) / static_cast<double>(s);
      return CountEstimate{ph * total, 1.96 * std::sqrt(ph * (1 - ph) / static_cast<double>(s)) * total};
    };
    const double inside_total = static_cast<double>(r) * std::exp(std::lgamma(static_cast<double>(nv) + 1) -
                                                                  std::lgamma(static_cast<double>(r) + 1) -
                                                                  std::lgamma(static_cast<double>(nv) - r + 1));
    info.inside_estimate = nv >= static_cast<std::size_t>(r) ? estimate(inside_hits, inside_total) : CountEstimate{};
    info.cross_estimate = estimate(cross_hits, std::pow(static_cast<double>(nv), r));
  }
  out.hypergraph = Hypergraph::from_flat(nv * static_cast<std::size_t>(r), r, std::move(flat), std::move(parts), r);
  if (options.sampled) {
    std::size_t cross = 0, inside = 0;
    for (EdgeId e = 0; e < out.hypergraph.num_edges(); ++e) (out.hypergraph.is_cross(e) ? cross : inside)++;
    info.base_cross = cross;
    info.base_inside = inside;
  }
  return out;
}

// ---------------------------------------------------------- random blowup

RandomBlowup random_blowup(const Hypergraph& inside, int t, double gamma, int ell, std::uint64_t seed,
                           const SearchBudget& budget) {
  if (t < 1) throw std::invalid_argument("blowup factor must be >= 1");
  if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("gamma must lie in (0,1)");
  const int r = inside.uniformity();
  if (ell < r) throw std::invalid_argument("pattern cap must be >= r");
  RandomBlowup out;
  out.p = std::pow(static_cast<double>(t), 1.0 + gamma - r);
  const std::size_t n = inside.num_vertices() * static_cast<std::size_t>(t);
  std::vector<int> parts(n, kNoPart);
  for (Vertex v = 0; v < inside.num_vertices(); ++v)
    for (int a = 0; a < t; ++a) parts[blowup_vertex(v, a, t)] = inside.part(v);

  Rng rng = derive_rng(seed, "random_blowup");
  std::vector<Vertex> flat;
  std::vector<int> copy(static_cast<std::size_t>(r), 0);
  for (EdgeId e = 0; e < inside.num_edges(); ++e) {
    const auto ed = inside.edge(e);
    std::fill(copy.begin(), copy.end(), 0);
    for (;;) {
      if (out.p >= 1.0 || rng.uniform() < out.p)
        for (int i = 0; i < r; ++i)
          flat.push_back(blowup_vertex(ed[static_cast<std::size_t>(i)], copy[static_cast<std::size_t>(i)], t));
      int i = r - 1;
      while (i >= 0 && ++copy[static_cast<std::size_t>(i)] == t) copy[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
    }
  }
  Hypergraph kept = Hypergraph::from_flat(n, r, std::move(flat), std::move(parts), inside.num_parts());
  out.kept_before_deletion = kept.num_edges();

  std::vector<char> alive(kept.num_edges(), 1);
  if (kept.num_edges() > 0) {
    SparsePatternScanner scanner(kept, ell);
    NodeCounter counter(budget);
    for (EdgeId seed_edge = 0; seed_edge < kept.num_edges(); ++seed_edge) {
      while (auto hit = scanner.scan_seed(seed_edge, alive, counter)) {
        alive[hit->back()] = 0;
        ++out.deletions;
      }
    }
  }
  out.hypergraph = kept.filter([&](EdgeId e) { return alive[e] != 0; });
  return out;
}

// ------------------------------------------------------- full construction

FullConstruction full_construction(const ConstructionParams& params, const SphereHypergraphOptions& options) {
  params.validate();
  SpherePartition partition =
      build_partition(params.k, params.z, params.theta, derive_seed(params.seed, "partition"));
  return full_construction(params, partition, options);
}

FullConstruction full_construction(const ConstructionParams& params, const SpherePartition& partition,
                                   const SphereHypergraphOptions& options) {
  params.validate();
  FullConstruction out;
  out.partition = partition;
  SphereHypergraph base = sphere_hypergraph(params, partition, options);
  const Hypergraph& h = base.hypergraph;
  const Hypergraph cross = h.filter([&](EdgeId e) { return h.is_cross(e); });
  const Hypergraph inside = h.filter([&](EdgeId e) { return h.is_inside(e); });

  const int t = params.blowup_t;
  const Hypergraph cross_blown = blowup(cross, t);
  RandomBlowup inside_blown = random_blowup(inside, t, params.gamma, params.pattern_cap,
                                            derive_seed(params.seed, "full_construction.inside"), options.budget);

  std::vector<Vertex> flat(cross_blown.flat().begin(), cross_blown.flat().end());
  flat.insert(flat.end(), inside_blown.hypergraph.flat().begin(), inside_blown.hypergraph.flat().end());
  std::vector<int> parts(cross_blown.parts().begin(), cross_blown.parts().end());
  out.hypergraph = Hypergraph::from_flat(cross_blown.num_vertices(), params.r, std::move(flat), std::move(parts),
                                         params.r);

  out.info = base.info;
  out.info.type = "full";
  out.info.base_cross = cross.num_edges();
  out.info.base_inside = inside.num_edges();
  out.info.blowup_t = t;
  out.info.blowup_p = inside_blown.p;
  out.info.inside_blown_kept = inside_blown.kept_before_deletion;
  out.info.pattern_deletions = inside_blown.deletions;
  out.info.part_size = base.info.tuples_per_part * static_cast<std::size_t>(t);
  return out;
}

SimpleGraph shadow_first_parts(const Hypergraph& g, int ell) {
  if (!g.partitioned()) throw std::invalid_argument("shadow_first_parts needs part labels");
  if (ell < 1 || ell > g.num_parts()) throw std::invalid_argument("ell out of range");
  std::vector<std::int64_t> pos(g.num_vertices(), -1);
  std::vector<int> labels;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.part(v) != kNoPart && g.part(v) < ell) {
      pos[v] = static_cast<std::int64_t>(labels.size());
      labels.push_back(g.part(v));
    }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto ed = g.edge(e);
    for (std::size_t i = 0; i < ed.size(); ++i) {
      if (pos[ed[i]] < 0) continue;
      for (std::size_t j = i + 1; j < ed.size(); ++j)
        if (pos[ed[j]] >= 0) pairs.emplace_back(static_cast<Vertex>(pos[ed[i]]), static_cast<Vertex>(pos[ed[j]]));
    }
  }
  SimpleGraph out = SimpleGraph::from_edges(labels.size(), std::move(pairs));
  for (Vertex v = 0; v < labels.size(); ++v) out.set_part(v, labels[v]);
  out.set_num_parts(ell);
  return out;
}

std::vector<std::vector<std::pair<int, int>>> covering_trees(int r, int u) {
  if (r < 2) throw std::invalid_argument("covering_trees needs r >= 2");
  if (u != (r + 1) / 2) throw std::invalid_argument("covering_trees needs u = ceil(r/2)");
  const int n = r % 2 == 0 ? r : r + 1;
  std::vector<std::vector<std::pair<int, int>>> trees;
  for (int i = 0; i < u; ++i) {
    std::vector<int> path;
    for (int k = 0; k < n; ++k) {
      const int step = k % 2 == 1 ? (k + 1) / 2 : -(k / 2);
      const int v = ((i + step) % n + n) % n;
      if (v < r) path.push_back(v);  // dropping the extra vertex joins its neighbours
    }
    std::vector<std::pair<int, int>> tree;
    for (std::size_t k = 1; k < path.size(); ++k)
      tree.emplace_back(std::min(path[k - 1], path[k]), std::max(path[k - 1], path[k]));
    trees.push_back(std::move(tree));
  }
  return trees;
}

// ------------------------------------------------------------- corollary

InnerProvider greedy_kfree_provider(int t) {
  if (t < 1) throw std::invalid_argument("greedy_kfree_provider needs t >= 1");
  return [t](std::size_t n, Rng& rng) {
    SimpleGraph g(n);
    if (t == 1 || n < 2) return g;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (const auto& [a, b] : pairs) {
      std::vector<Vertex> common;
      std::set_intersection(g.neighbors(a).begin(), g.neighbors(a).end(), g.neighbors(b).begin(),
                            g.neighbors(b).end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) >= t - 1 &&
          find_clique(g.induced(common), t - 1, SearchBudget::unlimited()).found())
        continue;
      g.add_edge(a, b);
    }
    return g;
  };
}

CorollaryGraph corollary_graph(const SimpleGraph& g, int q, int t, const Rational& a, const InnerProvider& inner,
                               std::uint64_t seed) {
  if (q < 2) throw std::invalid_argument("corollary_graph needs q >= 2");
  if (t < 1) throw std::invalid_argument("corollary_graph needs t >= 1");
  if (a <= 0 || a >= 1) throw std::invalid_argument("mixing fraction must lie in (0,1)");
  const Rational size_t_exact = Rational(static_cast<long>(g.num_vertices())) * (1 - a) / a;
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const BigInt rounded = (2 * numerator(size_t_exact) + denominator(size_t_exact)) / (2 * denominator(size_t_exact));
  const auto nt = static_cast<std::size_t>(rounded);

  CorollaryGraph out;
  out.class_sizes = balanced_part_sizes(nt, q - 1);
  Rng rng = derive_rng(seed, "corollary_graph");
  std::vector<std::pair<Vertex, Vertex>> es;
  std::vector<int> labels;
  std::size_t offset = 0;
  for (std::size_t c = 0; c < out.class_sizes.size(); ++c) {
    const std::size_t size = out.class_sizes[c];
    const SimpleGraph in = inner(size, rng);
    if (in.num_vertices() != size) throw std::invalid_argument("inner graph has the wrong vertex count");
    if (find_clique(in, t + 1, SearchBudget::unlimited()).found())
      throw std::invalid_argument("inner graph contains K_" + std::to_string(t + 1));
    for (const auto& [x, y] : in.edges())
      es.emplace_back(static_cast<Vertex>(offset + x), static_cast<Vertex>(offset + y));
    out.inner_edges += in.num_edges();
    for (std::size_t v = 0; v < size; ++v) labels.push_back(static_cast<int>(c));
    offset += size;
  }
  for (Vertex x = 0; x < nt; ++x)
    for (Vertex y = x + 1; y < nt; ++y)
      if (labels[x] != labels[y]) es.emplace_back(x, y);
  SimpleGraph tg = SimpleGraph::from_edges(nt, std::move(es));
  for (Vertex v = 0; v < nt; ++v) tg.set_part(v, labels[v]);
  tg.set_num_parts(q - 1);
  out.graph = complete_join(g, tg);
  return out;
}

// ---------------------------------------------------------- exact bounds

Rational theta_lower_bound(int t, int ell) {
  if (ell < 2 || ell > t) throw std::invalid_argument("theta_lower_bound needs 2 <= ell <= t");
  const int u = (t + 1) / 2;
  return Rational(1, 2) * (1 - Rational(1, ell)) / pow(Rational(2), static_cast<unsigned>(u * u));
}

Rational corollary_objective(int t, int ell, int q, const Rational& a) {
  if (q < 2) throw std::invalid_argument("corollary_objective needs q >= 2");
  const Rational b = theta_lower_bound(t, ell);
  const Rational k = Rational(q - 2, 2 * (q - 1));  // C(q-1,2) / (q-1)^2
  return b * a * a + k * (1 - a) * (1 - a) + (1 - a) * a;
}

MixingOptimum optimize_a(int t, int ell, int q) {
  if (q < 2) throw std::invalid_argument("optimize_a needs q >= 2");
  const Rational b = theta_lower_bound(t, ell);
  const Rational k = Rational(q - 2, 2 * (q - 1));
  const Rational denom = 2 * (1 - b - k);
  if (denom <= 0) throw std::logic_error("optimize_a: objective is not concave");
  MixingOptimum out;
  out.a_star = (1 - 2 * k) / denom;
  if (out.a_star <= 0 || out.a_star >= 1) {
    out.clamped = true;
    out.a_star = corollary_objective(t, ell, q, Rational(0)) >= corollary_objective(t, ell, q, Rational(1))
                     ? Rational(0)
                     : Rational(1);
  }
  out.bound = corollary_objective(t, ell, q, out.a_star);
  return out;
}

}  // namespace rtlab
