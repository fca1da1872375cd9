#include "rtlab/sparse_scan.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtlab {

int minimal_tkf_bound(int r, int m) {
  if (r < 2) throw std::invalid_argument("minimal_tkf_bound needs r >= 2");
  if (m < 1) throw std::invalid_argument("minimal_tkf_bound needs m >= 1");
  return r + (r - 1) * (m - 1) - 1;
}

bool is_sparse_violation(int r, int v, int m, int ell) {
  return v <= ell && v < r + (r - 1) * (m - 1);
}

SparsePatternScanner::SparsePatternScanner(const Hypergraph& h, int ell)
    : h_(h), ell_(ell), vertex_mult_(h.num_vertices(), 0) {
  if (ell < h.uniformity()) throw std::invalid_argument("pattern cap must be >= r");
}

std::optional<std::vector<EdgeId>> SparsePatternScanner::scan_seed(EdgeId seed, const std::vector<char>& alive,
                                                                   NodeCounter& counter) {
  if (!alive[seed]) return std::nullopt;
  visited_.clear();
  found_.clear();
  current_.assign(1, seed);
  for (Vertex x : h_.edge(seed)) ++vertex_mult_[x];
  vertex_count_ = h_.uniformity();
  const bool hit = grow(seed, alive, counter);
  for (EdgeId e : current_)
    for (Vertex x : h_.edge(e)) --vertex_mult_[x];
  current_.clear();
  vertex_count_ = 0;
  if (counter.exhausted() && !hit) throw BudgetExceeded("sparse pattern scan exceeded its node budget");
  if (!hit) return std::nullopt;
  std::sort(found_.begin(), found_.end());
  return found_;
}

bool SparsePatternScanner::grow(EdgeId seed, const std::vector<char>& alive, NodeCounter& counter) {
  if (!counter.tick()) return false;
  const int r = h_.uniformity();

  std::vector<EdgeId> frontier;
  for (EdgeId e : current_)
    for (Vertex x : h_.edge(e))
      for (EdgeId f : h_.incident(x))
        if (f > seed && alive[f]) frontier.push_back(f);
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  std::erase_if(frontier, [&](EdgeId f) { return std::find(current_.begin(), current_.end(), f) != current_.end(); });

  std::vector<EdgeId> tree_steps;
  for (EdgeId f : frontier) {
    int shared = 0;
    for (Vertex x : h_.edge(f)) shared += vertex_mult_[x] > 0 ? 1 : 0;
    const int v = vertex_count_ + r - shared;
    if (shared >= 2) {
      if (v <= ell_) {
        found_ = current_;
        found_.push_back(f);
        return true;
      }
    } else if (v <= ell_) {
      tree_steps.push_back(f);
    }
  }

  for (EdgeId f : tree_steps) {
    std::vector<EdgeId> key = current_;
    key.push_back(f);
    std::sort(key.begin(), key.end());
    if (!visited_.insert(key).second) continue;
    current_.push_back(f);
    for (Vertex x : h_.edge(f)) ++vertex_mult_[x];
    vertex_count_ += r - 1;
    const bool hit = grow(seed, alive, counter);
    vertex_count_ -= r - 1;
    for (Vertex x : h_.edge(f)) --vertex_mult_[x];
    if (hit) {
      current_.pop_back();
      return true;
    }
    current_.pop_back();
    if (counter.exhausted()) return false;
  }
  return false;
}

}  // namespace rtlab
