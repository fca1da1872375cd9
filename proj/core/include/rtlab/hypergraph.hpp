#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rtlab {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Part label of an unpartitioned vertex.
inline constexpr int kNoPart = -1;

/// Undirected simple graph with optional part labels.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n);

  /// Bulk construction; duplicate pairs are merged, loops rejected.
  static SimpleGraph from_edges(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges);

  std::size_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  /// Returns false when the edge already exists. Throws on loops and
  /// out-of-range endpoints.
  bool add_edge(Vertex u, Vertex v);
  bool adjacent(Vertex u, Vertex v) const;
  /// Sorted neighbour list.
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  /// All edges (u < v) in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  void set_part(Vertex v, int part);
  int part(Vertex v) const { return parts_[v]; }
  std::span<const int> parts() const { return parts_; }
  int num_parts() const { return num_parts_; }
  void set_num_parts(int parts) { num_parts_ = parts; }

  /// Subgraph induced on `vertices` (renumbered in the given order).
  SimpleGraph induced(std::span<const Vertex> vertices) const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<int> parts_;
  int num_parts_ = 0;
  std::size_t num_edges_ = 0;
};

/// r-uniform hypergraph with part labels. Edges are sorted r-sets of
/// distinct vertices, stored in lexicographic order; the object is immutable
/// once built.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(std::size_t n, int r, std::vector<int> parts = {}, int num_parts = -1);

  /// Sorts every edge, validates it, and drops duplicates.
  static Hypergraph from_edges(std::size_t n, int r, const std::vector<std::vector<Vertex>>& edges,
                               std::vector<int> parts = {}, int num_parts = -1);
  /// Same, from a flat buffer of m*r vertex ids.
  static Hypergraph from_flat(std::size_t n, int r, std::vector<Vertex> flat,
                              std::vector<int> parts = {}, int num_parts = -1);

  int uniformity() const { return r_; }
  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return r_ == 0 ? 0 : flat_.size() / static_cast<std::size_t>(r_); }

  std::span<const Vertex> edge(EdgeId e) const {
    return {flat_.data() + static_cast<std::size_t>(e) * static_cast<std::size_t>(r_),
            static_cast<std::size_t>(r_)};
  }
  std::span<const Vertex> flat() const { return flat_; }
  /// Edge ids containing v, ascending.
  std::span<const EdgeId> incident(Vertex v) const;
  /// Whether the (sorted) r-set is an edge.
  bool contains(std::span<const Vertex> sorted_edge) const;
  std::size_t degree(Vertex v) const { return incident(v).size(); }

  int part(Vertex v) const { return parts_[v]; }
  std::span<const int> parts() const { return parts_; }
  int num_parts() const { return num_parts_; }
  bool partitioned() const { return num_parts_ > 0; }
  std::vector<Vertex> part_vertices(int p) const;

  /// One vertex in each of r distinct parts.
  bool is_cross(EdgeId e) const;
  /// All vertices in one part.
  bool is_inside(EdgeId e) const;

  /// Same vertex set and labels, restricted to the selected edges.
  template <class Pred>
  Hypergraph filter(Pred keep) const {
    std::vector<Vertex> out;
    for (EdgeId e = 0; e < num_edges(); ++e)
      if (keep(e)) out.insert(out.end(), edge(e).begin(), edge(e).end());
    return from_sorted_flat(n_, r_, std::move(out), parts_, num_parts_);
  }
  Hypergraph with_parts(std::vector<int> parts, int num_parts) const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.flat_ == b.flat_ && a.parts_ == b.parts_ &&
           a.num_parts_ == b.num_parts_;
  }

 private:
  static Hypergraph from_sorted_flat(std::size_t n, int r, std::vector<Vertex> flat,
                                     std::vector<int> parts, int num_parts);
  void build_incidence();

  std::size_t n_ = 0;
  int r_ = 0;
  std::vector<Vertex> flat_;
  std::vector<int> parts_;
  int num_parts_ = 0;
  std::vector<std::size_t> inc_offsets_;
  std::vector<EdgeId> inc_ids_;
};

/// Pair -> covering edges, built once and shared by the pattern scans.
class PairIndex {
 public:
  explicit PairIndex(const Hypergraph& h);

  std::span<const EdgeId> covering(Vertex x, Vertex y) const;
  bool covered(Vertex x, Vertex y) const { return !covering(x, y).empty(); }
  static std::uint64_t key(Vertex x, Vertex y);

 private:
  std::unordered_map<std::uint64_t, std::vector<EdgeId>> index_;
};

enum class Role { core, subdivision };

/// Pattern vertex -> host vertex map, with the host edges realising the
/// pattern edges.
struct Embedding {
  std::vector<Vertex> host;
  std::vector<Role> roles;
  std::vector<std::vector<Vertex>> host_edges;

  std::vector<Vertex> core() const;
  bool injective() const;
};

/// xy is an edge iff some hyperedge contains both.
SimpleGraph shadow(const Hypergraph& h);

/// Vertex (v, a) of the blowup is v * t + a; every edge is replaced by its
/// t^r transversal copies; part labels are inherited.
Hypergraph blowup(const Hypergraph& h, int t);
inline Vertex blowup_vertex(Vertex v, int copy, int t) {
  return v * static_cast<Vertex>(t) + static_cast<Vertex>(copy);
}

/// Complete s-partite r-uniform hypergraph on n vertices, parts as equal as
/// possible (the first n mod s parts are one larger), vertices numbered part
/// by part.
Hypergraph turan_hypergraph(std::size_t n, int s, int r);
std::vector<std::size_t> balanced_part_sizes(std::size_t n, int parts);

/// Disjoint union plus every pair between the two vertex sets. Vertices of
/// `t_graph` follow those of `g`; part labels of `t_graph` are shifted by
/// g.num_parts().
SimpleGraph complete_join(const SimpleGraph& g, const SimpleGraph& t_graph);

/// Number of edges containing both x and y.
std::size_t codegree(const Hypergraph& h, Vertex x, Vertex y);

struct CleanResult {
  Hypergraph hypergraph;
  std::size_t removed = 0;
  int passes = 0;
};

/// Deletes every edge containing a pair of vertices from different parts
/// whose codegree is in [1, threshold]. Iterates to a fixed point unless
/// one_pass is set.
CleanResult clean_low_codegree(const Hypergraph& h, std::size_t threshold, bool one_pass = false);

}  // namespace rtlab
