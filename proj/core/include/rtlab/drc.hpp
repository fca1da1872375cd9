#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtlab/budget.hpp"
#include "rtlab/hypergraph.hpp"
#include "rtlab/rational.hpp"

namespace rtlab {

struct DrcParams {
  // Graph form: U of >= a vertices, every r of them with >= m common
  // neighbours, from t random vertices. n = 0 means the graph's order.
  std::uint64_t a = 1;
  std::uint64_t m = 1;
  std::uint64_t n = 0;
  std::uint64_t r = 2;
  std::uint64_t t = 1;
  // Hypergraph form.
  int s = 2;
  int delta = 9;
  double epsilon = 0;
  double beta = 0;
  std::size_t N = 0;
  int w = 6;
  // Procedure knobs.
  int retries = 64;
  std::size_t codegree_threshold = 16;
};

/// d^t / n^{t-1} - C(n,r) (m/n)^t, exactly.
Rational drc_lhs(const DrcParams& p, const Rational& d);
bool drc_feasible(const DrcParams& p, const Rational& d);
/// 2|E| / n.
Rational average_degree(const SimpleGraph& g);

struct DrcResult {
  bool success = false;
  std::vector<Vertex> set;
  int trials = 0;
  std::string failure;
};

/// Las Vegas dependent random choice: t vertices sampled with repetition,
/// their common neighbourhood, one vertex dropped from every r-subset with
/// fewer than m common neighbours; retried up to p.retries times. A returned
/// set has passed the exhaustive r-subset check. Throws
/// std::invalid_argument when require_feasible is set and the inequality
/// fails.
DrcResult drc_find_set(const SimpleGraph& g, const DrcParams& p, std::uint64_t seed, bool require_feasible = true);

/// Every r-subset of U has at least m common neighbours.
bool verify_common_neighbourhoods(const SimpleGraph& g, const std::vector<Vertex>& u, std::size_t r, std::size_t m);

struct HyperDrc {
  /// (r-1)-uniform, same vertex ids and labels as the input; part 0 is
  /// isolated.
  Hypergraph hypergraph;
  std::vector<Vertex> samples;
  double measured_epsilon = 0;  // |E(g_r)| / N^r
  double edge_target = 0;       // 1/2 eps^s N^{r-1}
};

/// Samples s vertices of part 0 with repetition; e over parts 1..r-1 is an
/// edge when e + w_i is an edge of g_r for every sample.
HyperDrc hyper_drc(const Hypergraph& g_r, int s, std::uint64_t seed);

struct DangerousCount {
  int weight = 0;
  std::uint64_t dangerous = 0;
  std::uint64_t examined = 0;
  double log2_bound = 0;  // log2 of 4 r Delta eps^-s beta^s w^{r Delta} r^w N^w
  bool complete = true;
};

/// Counts edge sets S of `reduced` with |S| <= delta and weight exactly
/// `weight` whose common extension into part 0 has fewer than beta N
/// vertices.
DangerousCount count_dangerous_sets(const Hypergraph& g_r, const Hypergraph& reduced, int weight,
                                    const DrcParams& p, const SearchBudget& budget = {});

struct FWitness {
  std::array<Vertex, 3> x{}, y{}, z{};
  std::vector<std::vector<Vertex>> edges;  // x, y, z edges then the 27 x_i y_j z_k
  std::optional<Embedding> tk6;
};

struct FSearchOptions {
  DrcParams drc{.a = 4, .m = 3, .n = 0, .r = 3, .t = 2};
  bool feasibility_gate = false;
  std::uint64_t seed = 1;
};

struct FResult {
  std::optional<FWitness> witness;
  std::string failed_stage;  // empty on success
  int trials = 0;
};

/// 3-partition, codegree cleaning, hyper_drc to a graph on V_2 u V_3, dependent
/// random choice for U, then edges E_3 in the larger side of U, E_2 in the
/// common neighbourhood of E_3 and E_1 among the common extensions; finally a
/// TK(6,3) on x1 x2 y1 y2 z1 z2 with fresh subdivision vertices.
FResult find_f_witness(const Hypergraph& h, const FSearchOptions& options);

bool verify_f_witness(const Hypergraph& h, const FWitness& f);

struct TkfResult {
  std::optional<Embedding> tkf5;
  std::optional<Embedding> tk4;
  Vertex x = 0, y = 0;
  std::size_t codegree = 0;
  std::string failure;
};

/// Codegree cleaning, the largest-codegree cross pair (x, y) whose third
/// vertices Z span an edge E, then TKF(5,3) = {x, y} u E and TK(4,3) on
/// x, y and two vertices of E.
TkfResult find_tkf5_tk4(const Hypergraph& h, std::size_t codegree_threshold = 16, std::uint64_t seed = 1);

struct Tk6Thresholds {
  double log2_n = 0;
  double gamma = 0;
  double log2_beta = 0;
  double beta = 0;
  double s = 0;
  double log2_epsilon = 0;
  double epsilon = 0;
  BigInt c;
  BigInt b;
  double log2_edge_threshold = 0;  // log2(b n^3 2^{-gamma^3/28} + 144 n^2)
};

/// Parameters of the TK(6,3) argument at r = 3, Delta = 9, w = 6. n enters
/// through log2 n so that astronomically large n stay representable.
Tk6Thresholds tk6_thresholds(double log2_n, double gamma);

}  // namespace rtlab
