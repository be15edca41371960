#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace pgl::detail {

// Visits every subset containing index 1 exactly once (2^(N-1) subsets,
// complement symmetry covers the rest). Gray-code order: each step flips one
// index, so the visitor sees incremental discrepancy updates.
// S is a signed scalar (int64 fast path or arbitrary precision).
// visit(mask, disc): mask has bit i set for index i+1; disc = sum_in - sum_out.
template <class S, class Visit>
void for_each_half_subset(const std::vector<S>& w, const S& total, Visit&& visit) {
  const std::uint32_t n = static_cast<std::uint32_t>(w.size());
  std::uint64_t mask = 1;
  S disc = w[0];
  disc += w[0];
  disc -= total;  // subset {1}
  visit(static_cast<std::uint64_t>(mask), disc);
  if (n == 1) return;
  const std::uint64_t steps = 1ull << (n - 1);
  for (std::uint64_t g = 1; g < steps; ++g) {
    const unsigned b = static_cast<unsigned>(std::countr_zero(g)) + 1;
    const std::uint64_t bit = 1ull << b;
    mask ^= bit;
    if (mask & bit) {
      disc += w[b];
      disc += w[b];
    } else {
      disc -= w[b];
      disc -= w[b];
    }
    visit(mask, disc);
  }
}

}  // namespace pgl::detail
