#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rtlab/budget.hpp"
#include "rtlab/hypergraph.hpp"
#include "rtlab/rational.hpp"
#include "rtlab/rng.hpp"
#include "rtlab/sphere.hpp"

namespace rtlab {

struct ConstructionParams {
  int r = 3;
  std::size_t z = 20;
  double alpha = 0.3;
  double beta = 0.3;
  double epsilon = 0.5;
  int k = 10;
  double theta = 0.5 / 3.1622776601683795;  // epsilon / sqrt(k)
  int u = 2;                                // ceil(r / 2)
  int blowup_t = 3;
  double gamma = 0.3;
  int pattern_cap = 27;  // r^3
  std::uint64_t seed = 1;

  /// Defaults derived from r, epsilon and k: theta, u and pattern_cap.
  static ConstructionParams make(int r, std::size_t z, double epsilon, int k, int blowup_t,
                                 double gamma, std::uint64_t seed);
  /// Throws std::invalid_argument when an invariant fails.
  void validate() const;
  /// Edge probability of the random blowup, blowup_t^{1 + gamma - r}.
  double blowup_probability() const;
};

/// u indices into the partition reps, pairwise within sqrt2 - theta.
using TupleVertex = std::vector<std::uint32_t>;

/// Two copies V_1, V_2 of the reps (vertex i and z + i). Inside pairs are
/// edges when d >= 2 - theta, cross pairs when d <= sqrt2 - theta.
SimpleGraph bollobas_erdos(const SpherePartition& partition, double epsilon, int k);

/// All ordered u-tuples of reps with pairwise distances <= sqrt2 - theta,
/// lexicographic. Repeated points are allowed (d = 0).
std::vector<TupleVertex> tuple_vertices(const SpherePartition& partition, int u, double theta);

struct SphereHypergraphOptions {
  bool sampled = false;
  std::size_t vertex_cap = 5000;    // per part, exhaustive mode
  std::size_t samples = 200'000;    // per edge family, sampled mode
  SearchBudget budget{};
};

struct CountEstimate {
  double value = 0;
  double half_width = 0;  // 95% normal interval
};

struct ConstructionInfo {
  std::string type;
  ConstructionParams params;
  std::size_t tuples_per_part = 0;
  std::size_t base_cross = 0;
  std::size_t base_inside = 0;
  bool sampled = false;
  CountEstimate cross_estimate;
  CountEstimate inside_estimate;
  int blowup_t = 1;
  double blowup_p = 1;
  std::size_t inside_blown_kept = 0;  // after the coin flips, before deletions
  std::size_t pattern_deletions = 0;
  std::size_t part_size = 0;          // m = |V_i| t
};

struct SphereHypergraph {
  Hypergraph hypergraph;
  std::vector<TupleVertex> tuples;  // vertex part * |tuples| + i is tuples[i]
  ConstructionInfo info;
};

/// r parts, each a copy of tuple_vertices(u, theta). Inside edges: r-sets in
/// one part where every pair has a coordinate j with d >= 2 - theta. Cross
/// edges: one vertex per part, every pair of coordinates of different
/// vertices within sqrt2 - theta.
SphereHypergraph sphere_hypergraph(const ConstructionParams& params, const SpherePartition& partition,
                                   const SphereHypergraphOptions& options = {});

struct RandomBlowup {
  Hypergraph hypergraph;
  double p = 1;
  std::size_t kept_before_deletion = 0;
  std::size_t deletions = 0;
};

/// t-blowup of `inside` with each copy kept with probability t^{1+gamma-r},
/// then one edge (the lexicographically last) deleted from every connected
/// collection with v <= ell vertices and v < r + (r-1)(m-1). Throws
/// BudgetExceeded when the pattern scan runs out of nodes.
RandomBlowup random_blowup(const Hypergraph& inside, int t, double gamma, int ell, std::uint64_t seed,
                           const SearchBudget& budget = {});

struct FullConstruction {
  Hypergraph hypergraph;
  SpherePartition partition;
  ConstructionInfo info;
};

/// Cross edges blown up completely, inside edges through random_blowup.
/// W_i = V_i x [t].
FullConstruction full_construction(const ConstructionParams& params,
                                   const SphereHypergraphOptions& options = {});
FullConstruction full_construction(const ConstructionParams& params, const SpherePartition& partition,
                                   const SphereHypergraphOptions& options = {});

/// Shadow of the whole hypergraph restricted to pairs inside W_1 u ... u W_ell
/// (parts 0..ell-1), renumbered in vertex order, part labels kept.
SimpleGraph shadow_first_parts(const Hypergraph& g, int ell);

/// u spanning trees on [r] whose union is K_r (zigzag paths).
std::vector<std::vector<std::pair<int, int>>> covering_trees(int r, int u);

/// Returns a K_{t+1}-free graph on the requested number of vertices.
using InnerProvider = std::function<SimpleGraph(std::size_t n, Rng& rng)>;

/// Random maximal K_{t+1}-free graph by greedy insertion over shuffled pairs.
InnerProvider greedy_kfree_provider(int t);

struct CorollaryGraph {
  SimpleGraph graph;
  std::vector<std::size_t> class_sizes;  // of T
  std::size_t inner_edges = 0;
};

/// T = complete (q-1)-partite graph on round(|g| (1-a)/a) vertices with
/// near-equal classes, a K_{t+1}-free inner graph in each class (checked),
/// completely joined to g. Vertices of T follow those of g.
CorollaryGraph corollary_graph(const SimpleGraph& g, int q, int t, const Rational& a,
                               const InnerProvider& inner, std::uint64_t seed);

/// 1/2 (1 - 1/ell) 2^{-ceil(t/2)^2}.
Rational theta_lower_bound(int t, int ell);

struct MixingOptimum {
  Rational a_star;
  Rational bound;
  bool clamped = false;
};

/// Maximizer over a in (0,1) of
///   B a^2 + C(q-1,2) ((1-a)/(q-1))^2 + (1-a) a,  B = theta_lower_bound(t, ell).
MixingOptimum optimize_a(int t, int ell, int q);
Rational corollary_objective(int t, int ell, int q, const Rational& a);

}  // namespace rtlab
