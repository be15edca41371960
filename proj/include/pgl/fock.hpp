#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "pgl/bigint.hpp"

namespace pgl {

// Occupation numbers of the three-mode system with energy (n1 - n2 - n3)^2.
struct FockTriple {
  Int n1, n2, n3;
  bool operator==(const FockTriple&) const = default;
};

// Zero-energy states at fixed particle number: n1 = n2 + n3 forces
// n1 = total/2, so the space is empty for odd totals and has total/2 + 1
// states (n2 = 0..total/2) for even totals, returned by ascending n2.
std::vector<FockTriple> enumerate_zero_eigenspace(std::uint64_t total);

// Membership by generating the sequence 0, 1, 1, 2, 3, ... up to n.
// index is the smallest matching position (so 1 reports index 1).
struct FibCheck {
  bool is_fibonacci = false;
  std::optional<std::uint64_t> index;
};

FibCheck fib_brute_force(const Int& n);

// Continued-fraction convergents p_k/q_k of the fractional part of the golden
// ratio: q_0 = 1, p_1 = q_1 = 1, p_k = q_{k-1}, q_k = q_{k-1} + q_{k-2}.
// gcd(p_k, q_k) = 1 for all k.
struct Convergent {
  std::uint64_t k = 0;
  Int p, q;
};

Convergent golden_convergent(std::uint64_t k);

// Membership via the closed-form window test: n >= 2 is Fibonacci iff
// floor(n(1+p/q) + 1/n) == ceil(n(1+p/q) - 1/n), evaluated in exact integer
// arithmetic over the common denominator q*n. The convergent is the smallest
// k with q_k >= precision_factor * n; that linear precision is required for
// the +-1/n window to isolate the right integer. n = 1 is answered directly:
// its window has width 2 and always straddles two integers, so the equality
// test cannot classify it. n = 0 is a refusal (use fib_brute_force).
struct BinetResult {
  bool is_fibonacci = false;
  Convergent convergent_used;
};

BinetResult fib_binet_test(const Int& n, unsigned precision_factor = 2);

// Exact check of |{phi} - p_k/q_k| < 1/(sqrt(5) q_k^2), reduced to integer
// comparisons by clearing the irrationals: with a = q + 2p the condition is
// (5q^2 - 2)^2 < 5 q^2 a^2 < (5q^2 + 2)^2. It holds precisely for odd k;
// a^2 - 5q^2 alternates between +4 and -4 along the convergents.
bool verify_convergent_bound(std::uint64_t k);

enum class FockKind { Vacuum, Fibonacci, NonFibonacci };

// A triple is Fibonacci when n1 = n2 + n3 and {n2, n3} occupy adjacent
// positions of the sequence (either order; 0 = F_0 counts, and 1 may sit at
// position 1 or 2). fibonacci_indices reports consistent positions for
// (n1, n2, n3) when the kind is Fibonacci.
struct FockClassification {
  FockKind kind = FockKind::NonFibonacci;
  std::optional<std::array<std::uint64_t, 3>> fibonacci_indices;
};

FockClassification classify_fock_state(const FockTriple& state);

struct EigenspaceDecomposition {
  std::uint64_t total_particles = 0;
  std::vector<FockTriple> fibonacci_states;
  std::vector<FockTriple> non_fibonacci_states;
  bool vacuum_present = false;
};

EigenspaceDecomposition decompose_eigenspace(std::uint64_t total);

}  // namespace pgl
