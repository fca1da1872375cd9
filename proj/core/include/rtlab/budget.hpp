#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rtlab {

/// Node budget for exact searches. The default comes from the RTLAB_BUDGET
/// environment variable when set.
struct SearchBudget {
  std::uint64_t max_nodes = default_nodes();

  static std::uint64_t default_nodes();
  static SearchBudget unlimited() { return {UINT64_MAX}; }
};

/// Thrown by construction steps whose internal scans run out of budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts visited search nodes against a budget.
class NodeCounter {
 public:
  explicit NodeCounter(const SearchBudget& budget) : limit_(budget.max_nodes) {}

  /// Returns false once the budget is spent.
  bool tick() {
    if (nodes_ >= limit_) {
      exhausted_ = true;
      return false;
    }
    ++nodes_;
    return true;
  }
  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace rtlab
