#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pgl/bigint.hpp"
#include "pgl/subset.hpp"

namespace pgl {

// A two-way partitioning instance: nonnegative integer weights q_1..q_N.
// Equivalently the couplings of the quadratic spin Hamiltonian
// (sum_i q_i s_i)^2 with s_i = +-1.
class Instance {
 public:
  // Requires at least one weight; negative weights are rejected.
  explicit Instance(std::vector<Int> weights, std::string label = "");

  std::uint32_t size() const { return static_cast<std::uint32_t>(weights_.size()); }
  const std::vector<Int>& weights() const { return weights_; }
  const Int& weight(std::uint32_t index) const { return weights_[index - 1]; }  // 1-based
  const Int& total() const { return total_; }
  bool has_zero_weight() const { return has_zero_; }
  const std::string& label() const { return label_; }

 private:
  std::vector<Int> weights_;
  Int total_;
  std::string label_;
  bool has_zero_ = false;
};

// Signed discrepancy (sum inside minus sum outside) and its square.
// energy == discrepancy * discrepancy always.
struct EnergyValue {
  Int discrepancy;
  Int energy;
};

// Throws ValidationError if the subset references an index > N.
EnergyValue energy(const Instance& instance, const SubsetAssignment& subset);

SubsetAssignment complement(const Instance& instance, const SubsetAssignment& subset);

// N weights drawn uniformly from [1, 2^bits - 1], deterministic in (n, bits, seed)
// across platforms (mt19937_64 with rejection sampling, low 64-bit word first).
Instance generate_instance(std::uint32_t n, unsigned bits, std::uint64_t seed);

// Accepts either format, sniffed on the first non-space byte:
//   - text: whitespace separated decimal integers, '#' starts a comment;
//   - JSON: {"label": "...", "weights": ["123", ...]} with decimal-string weights.
// Malformed input raises ValidationError with a line/offset position; negative
// weights are a validation failure, not a parse failure.
Instance load_instance(std::istream& in);
Instance load_instance_file(const std::string& path);

// Text form drops the label; JSON round-trips it.
void save_instance_text(const Instance& instance, std::ostream& out);
void save_instance_json(const Instance& instance, std::ostream& out);

}  // namespace pgl
