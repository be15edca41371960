#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgl/bigint.hpp"
#include "pgl/instance.hpp"
#include "pgl/solvers.hpp"
#include "pgl/subset.hpp"

namespace pgl {

// All minimizing configurations of an instance. When truncated is false the
// list is complete, closed under complement, of even size, and sorted in
// canonical (lexicographic) order; total_count is always the exact degeneracy.
struct GroundEigenspace {
  Int optimal_energy;
  std::vector<SubsetAssignment> configurations;
  bool truncated = false;
  std::uint64_t total_count = 0;
};

// Exhaustive enumeration; throws CapRefusalError when N exceeds the
// brute-force cap. At most `limit` configurations are materialized.
GroundEigenspace enumerate_ground_configurations(const Instance& instance,
                                                 std::uint64_t limit = 65536,
                                                 const SolverCaps& caps = {});

// The uniform superposition over the ground configurations, amplitudes kept
// symbolic as "1/sqrt(d)". Basis labels are +-1 spin strings (z_i = +1 iff
// i is in the subset), in configuration order.
struct StateVectorDescription {
  std::uint64_t dimension = 0;
  std::vector<std::string> basis_labels;
  std::string amplitude;
};

// Throws CapRefusalError when the space was truncated.
StateVectorDescription ground_state_vector(const GroundEigenspace& space, std::uint32_t n);

}  // namespace pgl
