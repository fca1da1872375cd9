#include "rtlab/budget.hpp"

#include <cstdlib>

namespace rtlab {

std::uint64_t SearchBudget::default_nodes() {
  constexpr std::uint64_t kFallback = 2'000'000'000ULL;
  if (const char* env = std::getenv("RTLAB_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kFallback;
}

}  // namespace rtlab
