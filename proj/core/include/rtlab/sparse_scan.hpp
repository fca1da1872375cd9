#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "rtlab/budget.hpp"
#include "rtlab/hypergraph.hpp"

namespace rtlab {

/// Vertex bound r + (r-1)(m-1) - 1 satisfied by every minimal member of
/// TKF(r+1, r) with m edges.
int minimal_tkf_bound(int r, int m);

/// Whether a connected collection of m r-edges on v vertices is one of the
/// forbidden sparse patterns: v <= ell and v < r + (r-1)(m-1).
bool is_sparse_violation(int r, int v, int m, int ell);

/// Searches connected edge collections for sparse violations. A connected
/// collection with v < r + (r-1)(m-1) contains a violating hypertree plus one
/// closing edge, so the scan grows hypertrees from a seed edge (using only
/// edges with larger ids) and stops at the first edge that meets the current
/// vertex set in two or more vertices.
class SparsePatternScanner {
 public:
  SparsePatternScanner(const Hypergraph& h, int ell);

  /// A violating collection whose least edge is `seed`, using only edges
  /// with alive[e] set. Edge ids ascending.
  std::optional<std::vector<EdgeId>> scan_seed(EdgeId seed, const std::vector<char>& alive,
                                               NodeCounter& counter);

 private:
  bool grow(EdgeId seed, const std::vector<char>& alive, NodeCounter& counter);

  const Hypergraph& h_;
  int ell_;
  std::vector<EdgeId> current_;
  std::vector<int> vertex_mult_;
  int vertex_count_ = 0;
  std::set<std::vector<EdgeId>> visited_;
  std::vector<EdgeId> found_;
};

}  // namespace rtlab
