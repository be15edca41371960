#include "pgl/fock.hpp"

#include <algorithm>
#include <utility>

#include "pgl/errors.hpp"

namespace pgl {
namespace {

struct SequenceHit {
  bool member = false;
  std::uint64_t smallest_index = 0;
};

SequenceHit locate_in_sequence(const Int& n) {
  Int a = 0, b = 1;  // positions 0 and 1
  std::uint64_t idx = 0;
  while (a < n) {
    Int c = a + b;
    a = std::move(b);
    b = std::move(c);
    ++idx;
  }
  return {a == n, idx};
}

// 1 sits at positions 1 and 2; every other member has a unique position.
std::pair<std::uint64_t, std::uint64_t> position_range(const Int& value,
                                                       std::uint64_t smallest_index) {
  if (value == 1) return {1, 2};
  return {smallest_index, smallest_index};
}

bool adjacent_positions(const std::pair<std::uint64_t, std::uint64_t>& a,
                        const std::pair<std::uint64_t, std::uint64_t>& b,
                        std::uint64_t& out_a, std::uint64_t& out_b) {
  for (std::uint64_t i = a.first; i <= a.second; ++i) {
    for (std::uint64_t j = b.first; j <= b.second; ++j) {
      if (i + 1 == j || j + 1 == i) {
        out_a = i;
        out_b = j;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<FockTriple> enumerate_zero_eigenspace(std::uint64_t total) {
  std::vector<FockTriple> states;
  if (total % 2 != 0) return states;
  const std::uint64_t half = total / 2;
  states.reserve(half + 1);
  for (std::uint64_t j = 0; j <= half; ++j) {
    states.push_back({Int(half), Int(j), Int(half - j)});
  }
  return states;
}

FibCheck fib_brute_force(const Int& n) {
  if (n < 0) {
    throw ValidationError("sequence membership is defined for nonnegative n");
  }
  const SequenceHit hit = locate_in_sequence(n);
  FibCheck check;
  check.is_fibonacci = hit.member;
  if (hit.member) check.index = hit.smallest_index;
  return check;
}

Convergent golden_convergent(std::uint64_t k) {
  Convergent c;
  c.k = k;
  // p_k/q_k walks 0/1, 1/1, 1/2, 2/3, 3/5, ...; seeding q_{-1} = 0 makes the
  // recurrence uniform across the repeated q = 1 at k = 0 and k = 1.
  Int q_prev = 0, q = 1, p = 0;
  for (std::uint64_t t = 0; t < k; ++t) {
    Int q_next = q + q_prev;
    p = q;
    q_prev = q;
    q = std::move(q_next);
  }
  c.p = std::move(p);
  c.q = std::move(q);
  return c;
}

BinetResult fib_binet_test(const Int& n, unsigned precision_factor) {
  if (n <= 0) {
    throw ValidationError("the closed-form membership test needs n >= 1");
  }

  // Smallest convergent with q_k >= precision_factor * n. The +-1/n window
  // only isolates the right integer with at least that much precision.
  const Int target = Int(precision_factor) * n;
  BinetResult result;
  {
    Int q_prev = 0, q = 1, p = 0;
    std::uint64_t k = 0;
    while (q < target) {
      Int q_next = q + q_prev;
      p = q;
      q_prev = q;
      q = std::move(q_next);
      ++k;
    }
    result.convergent_used = {k, std::move(p), std::move(q)};
  }

  if (n == 1) {
    // The window has width 2 here and always straddles two integers, so the
    // uniqueness test below cannot see the membership; answer it directly.
    result.is_fibonacci = true;
    return result;
  }

  const Int& p = result.convergent_used.p;
  const Int& q = result.convergent_used.q;
  const Int denom = q * n;
  const Int center = n * n * (q + p);
  const Int floor_upper = (center + q) / denom;
  const Int ceil_lower = (center - q + denom - 1) / denom;
  result.is_fibonacci = (floor_upper == ceil_lower);
  return result;
}

bool verify_convergent_bound(std::uint64_t k) {
  const Convergent c = golden_convergent(k);
  // Squaring |{phi} - p/q| < 1/(sqrt(5) q^2) twice clears both irrationals:
  // with a = q + 2p it becomes (5q^2 - 2)^2 < 5 q^2 a^2 < (5q^2 + 2)^2.
  const Int five_q2 = 5 * c.q * c.q;
  const Int a = c.q + 2 * c.p;
  const Int mid = five_q2 * a * a;
  const Int low = (five_q2 - 2) * (five_q2 - 2);
  const Int high = (five_q2 + 2) * (five_q2 + 2);
  return low < mid && mid < high;
}

FockClassification classify_fock_state(const FockTriple& state) {
  if (state.n1 < 0 || state.n2 < 0 || state.n3 < 0) {
    throw ValidationError("occupation numbers cannot be negative");
  }

  FockClassification result;
  if (state.n1 == 0 && state.n2 == 0 && state.n3 == 0) {
    result.kind = FockKind::Vacuum;
    return result;
  }

  result.kind = FockKind::NonFibonacci;
  if (state.n1 != state.n2 + state.n3) return result;

  const SequenceHit hit2 = locate_in_sequence(state.n2);
  const SequenceHit hit3 = locate_in_sequence(state.n3);
  if (!hit2.member || !hit3.member) return result;

  std::uint64_t i2 = 0, i3 = 0;
  if (!adjacent_positions(position_range(state.n2, hit2.smallest_index),
                          position_range(state.n3, hit3.smallest_index), i2, i3)) {
    return result;
  }

  // Adjacent members sum to the next one, so n1's position is forced.
  result.kind = FockKind::Fibonacci;
  result.fibonacci_indices = {std::max(i2, i3) + 1, i2, i3};
  return result;
}

EigenspaceDecomposition decompose_eigenspace(std::uint64_t total) {
  EigenspaceDecomposition decomposition;
  decomposition.total_particles = total;
  for (FockTriple& state : enumerate_zero_eigenspace(total)) {
    const FockClassification cls = classify_fock_state(state);
    switch (cls.kind) {
      case FockKind::Vacuum:
        decomposition.vacuum_present = true;
        break;
      case FockKind::Fibonacci:
        decomposition.fibonacci_states.push_back(std::move(state));
        break;
      case FockKind::NonFibonacci:
        decomposition.non_fibonacci_states.push_back(std::move(state));
        break;
    }
  }
  return decomposition;
}

}  // namespace pgl
