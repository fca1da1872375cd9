#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rtlab/budget.hpp"
#include "rtlab/constructions.hpp"
#include "rtlab/hypergraph.hpp"
#include "rtlab/rational.hpp"
#include "rtlab/sphere.hpp"

namespace rtlab {

enum class Verdict { holds, violated, budget_exceeded };
std::string to_string(Verdict v);

/// Outcome of a pattern search. `holds` means no pattern exists.
struct PatternResult {
  Verdict verdict = Verdict::holds;
  std::optional<Embedding> witness;
  std::uint64_t nodes = 0;

  bool found() const { return witness.has_value(); }
};

/// Exact value, or certified bounds when the budget ran out.
struct BoundResult {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool exact = true;
  std::uint64_t nodes = 0;
  std::vector<Vertex> witness;  // a set attaining `lower`

  std::size_t value() const { return lower; }
};

/// K_s by branch and bound with greedy-colouring pruning.
PatternResult find_clique(const SimpleGraph& g, int s, const SearchBudget& budget = {});

/// Largest vertex set inducing a K_t-free subgraph.
BoundResult alpha_t(const SimpleGraph& g, int t, const SearchBudget& budget = {});

/// Largest vertex set containing no hyperedge.
BoundResult hyper_independence(const Hypergraph& h, const SearchBudget& budget = {});

/// TK_s^r: s core vertices, one edge per core pair whose other r-2 vertices
/// are fresh (not core, not used by another edge of the embedding).
PatternResult find_tk(const Hypergraph& h, int s, const SearchBudget& budget = {});

/// s vertices with every pair covered by some edge.
PatternResult find_tkf_core(const Hypergraph& h, int s, const SearchBudget& budget = {});

/// Four pairwise covered vertices, two in part i and two in part j != i.
PatternResult scan_split_core(const Hypergraph& h, const SearchBudget& budget = {});

/// A connected edge collection with v <= ell and v < r + (r-1)(m-1).
PatternResult scan_sparse_patterns(const Hypergraph& h, int ell, const SearchBudget& budget = {});

// Independent witness checks (direct recounts against the host).
bool verify_clique(const SimpleGraph& g, const std::vector<Vertex>& vertices);
bool verify_tk(const Hypergraph& h, int s, const Embedding& e);
bool verify_tkf_core(const Hypergraph& h, const std::vector<Vertex>& core);
bool verify_split_core(const Hypergraph& h, const Embedding& e);
bool verify_sparse_pattern(const Hypergraph& h, int ell, const std::vector<std::vector<Vertex>>& edges);

struct FarMatching {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // (from a1, from a2) rep indices
  std::size_t size() const { return pairs.size(); }
};

/// Maximum matching of the bipartite graph a1 x a2, pair adjacent when the
/// reps are at distance >= 2 - theta. Requires |a1| = |a2|.
FarMatching far_pair_matching(const std::vector<std::uint32_t>& a1, const std::vector<std::uint32_t>& a2,
                              const SpherePartition& partition, double theta);

/// Leaf-peeling embedding of a tree on [r]: i goes into sets[i] and tree
/// edges land on pairs at distance >= 2 - theta. Returns one rep per vertex.
std::optional<std::vector<std::uint32_t>> tree_embedding(
    const std::vector<std::vector<std::uint32_t>>& sets, const std::vector<std::pair<int, int>>& tree,
    const SpherePartition& partition, double theta);

/// A numeric comparison in a report. Exact values are kept as rationals.
struct Comparison {
  std::string name;
  std::string relation;  // "<=", ">=", "==", or "info"
  Rational measured;
  Rational bound;
  double measured_approx = 0;
  double bound_approx = 0;
  bool exact = true;
  bool asserted = false;
  bool holds = true;
};

struct VerificationReport {
  std::string property;
  Verdict verdict = Verdict::holds;
  std::optional<Embedding> witness;
  std::uint64_t nodes = 0;
  std::vector<Comparison> comparisons;
};

/// Measured sizes against the closed-form terms. Only the assumption-free
/// identities are asserted.
VerificationReport density_report(const Hypergraph& h, const ConstructionInfo& info);
VerificationReport density_report(const SimpleGraph& g);

}  // namespace rtlab
