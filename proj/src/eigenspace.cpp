#include "pgl/eigenspace.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "pgl/detail/half_enum.hpp"
#include "pgl/errors.hpp"

namespace pgl {
namespace {

// Spin-string order: position 1 first, -1 before +1. For masks (bit i is
// index i+1) that is "the lowest differing bit decides, absent < present".
bool mask_spin_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t d = a ^ b;
  if (d == 0) return false;
  const std::uint64_t t = d & (~d + 1);
  return (a & t) == 0;
}

template <class S>
S abs_of(const S& x) {
  return x < 0 ? S(-x) : x;
}

// Collects every mask containing index 1 whose |discrepancy| is minimal.
template <class S>
std::vector<std::uint64_t> minimizing_half_masks(const std::vector<S>& w, const S& total) {
  std::vector<std::uint64_t> hits;
  S best{};
  bool first = true;
  detail::for_each_half_subset<S>(w, total, [&](std::uint64_t mask, const S& disc) {
    S a = abs_of(disc);
    if (first || a < best) {
      best = std::move(a);
      hits.clear();
      hits.push_back(mask);
      first = false;
    } else if (a == best) {
      hits.push_back(mask);
    }
  });
  return hits;
}

std::vector<std::uint64_t> minimizing_masks(const Instance& instance) {
  constexpr std::int64_t kSafe = std::numeric_limits<std::int64_t>::max() / 4;
  if (instance.total() <= kSafe) {
    std::vector<std::int64_t> w;
    w.reserve(instance.size());
    for (const Int& q : instance.weights()) w.push_back(q.convert_to<std::int64_t>());
    return minimizing_half_masks<std::int64_t>(w, instance.total().convert_to<std::int64_t>());
  }
  return minimizing_half_masks<Int>(instance.weights(), instance.total());
}

}  // namespace

GroundEigenspace enumerate_ground_configurations(const Instance& instance, std::uint64_t limit,
                                                 const SolverCaps& caps) {
  const std::uint32_t n = instance.size();
  if (n > caps.brute_force_cap || n > 64) {
    throw CapRefusalError("ground-space enumeration is exhaustive and capped at N <= " +
                          std::to_string(std::min<std::uint32_t>(caps.brute_force_cap, 64)) +
                          " (instance has N = " + std::to_string(n) + ")");
  }

  std::vector<std::uint64_t> hits = minimizing_masks(instance);
  std::sort(hits.begin(), hits.end(), mask_spin_less);

  GroundEigenspace space;
  space.total_count = 2 * static_cast<std::uint64_t>(hits.size());
  space.truncated = space.total_count > limit;

  // Complements (spin -1 at position 1) sort before every mask that keeps
  // index 1, and complementing reverses the order within the block.
  std::uint64_t budget = space.truncated ? limit : space.total_count;
  space.configurations.reserve(budget);
  for (auto it = hits.rbegin(); it != hits.rend() && budget > 0; ++it, --budget) {
    space.configurations.push_back(SubsetAssignment::from_mask(*it).complement_within(n));
  }
  for (auto it = hits.begin(); it != hits.end() && budget > 0; ++it, --budget) {
    space.configurations.push_back(SubsetAssignment::from_mask(*it));
  }

  space.optimal_energy = energy(instance, SubsetAssignment::from_mask(hits.front())).energy;
  return space;
}

StateVectorDescription ground_state_vector(const GroundEigenspace& space, std::uint32_t n) {
  if (space.truncated) {
    throw CapRefusalError("cannot build a normalized state over a truncated configuration list (" +
                          std::to_string(space.total_count) + " configurations exist)");
  }
  StateVectorDescription vec;
  vec.dimension = space.configurations.size();
  vec.basis_labels.reserve(space.configurations.size());
  for (const SubsetAssignment& a : space.configurations) {
    vec.basis_labels.push_back(a.spin_string(n));
  }
  vec.amplitude = "1/sqrt(" + std::to_string(vec.dimension) + ")";
  return vec;
}

}  // namespace pgl
