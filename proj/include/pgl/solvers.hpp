#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgl/bigint.hpp"
#include "pgl/instance.hpp"
#include "pgl/subset.hpp"

namespace pgl {

struct SolveStats {
  std::uint64_t nodes_expanded = 0;   // subsets, candidate pairs, or leaves, per solver
  double elapsed_seconds = 0.0;       // wall time around the search only
  std::uint64_t peak_list_size = 0;   // max elements held in lists/heaps at once
};

// Witness is always the canonical variant containing index 1; its energy
// equals optimal_energy exactly.
struct SolveResult {
  Int optimal_energy;
  Int discrepancy;  // signed, for the reported witness
  SubsetAssignment witness;
  bool exact = false;
  SolveStats stats;
};

// Empty optionals mean unlimited.
struct SolverBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;
};

struct SolverCaps {
  std::uint32_t brute_force_cap = 28;
  std::uint64_t max_memory_bytes = 2ull << 30;  // meet-in-the-middle list guard
};

// Exhaustive search over the 2^(N-1) subsets containing index 1 (complement
// symmetry halves the work), Gray-code incremental discrepancies. Witness is
// the globally lexicographically smallest canonical optimum.
// Throws CapRefusalError when N exceeds caps.brute_force_cap.
SolveResult solve_brute_force(const Instance& instance, const SolverCaps& caps = {});

// Meet in the middle: both half subset-sum lists sorted, one linear scan.
// O(2^(N/2)) time and space; refuses when the list estimate exceeds the
// memory cap.
SolveResult solve_horowitz_sahni(const Instance& instance, const SolverCaps& caps = {});

// Four quarter lists; two priority-queue generators stream the half sums in
// ascending and descending order, scanned like the two-pointer pass above.
// O(2^(N/2)) time but only O(2^(N/4)) space. N < 4 delegates to brute force.
SolveResult solve_schroeppel_shamir(const Instance& instance, const SolverCaps& caps = {});

// Largest-two differencing heuristic, O(N log N). exact is always false; the
// returned energy is an upper bound on the optimum.
SolveResult solve_kk(const Instance& instance);

// Complete anytime search over difference/union decisions on the two largest
// entries. The first leaf reproduces the differencing heuristic; nodes are
// counted as leaves evaluated. exact reports whether the search finished
// (or proved optimality via the parity floor) within the budget.
SolveResult solve_ckk(const Instance& instance, const SolverBudget& budget = {});

inline constexpr const char* kSolverNames[] = {"brute", "hs", "ss", "kk", "ckk"};

bool is_solver_name(std::string_view name);

// Dispatch by name ("brute", "hs", "ss", "kk", "ckk").
// Throws ValidationError for unknown names.
SolveResult solve_by_name(std::string_view name, const Instance& instance,
                          const SolverBudget& budget = {}, const SolverCaps& caps = {});

}  // namespace pgl
