#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pgl {

// A subset of item indices 1..N, kept sorted ascending and duplicate-free.
class SubsetAssignment {
 public:
  SubsetAssignment() = default;

  // Sorts and validates; indices must be >= 1. Duplicates are rejected.
  static SubsetAssignment from_indices(std::vector<std::uint32_t> indices);
  // Bit i of `mask` selects index i+1.
  static SubsetAssignment from_mask(std::uint64_t mask);

  const std::vector<std::uint32_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::uint32_t index) const;
  std::uint32_t max_index() const { return indices_.empty() ? 0 : indices_.back(); }

  // Requires max_index() <= 64.
  std::uint64_t to_mask() const;

  // Complement within the universe 1..n. Requires max_index() <= n.
  SubsetAssignment complement_within(std::uint32_t n) const;

  // The variant of (A, complement) that contains index 1.
  SubsetAssignment canonical_within(std::uint32_t n) const;

  // "+1" for members, "-1" otherwise, positions 1..n, space separated.
  std::string spin_string(std::uint32_t n) const;

  bool operator==(const SubsetAssignment& other) const = default;

 private:
  std::vector<std::uint32_t> indices_;
};

// Lexicographic order on the ascending index sequences, so {1,2} < {1,2,3} < {1,3}.
bool lex_less(const SubsetAssignment& a, const SubsetAssignment& b);

// Same order evaluated directly on bitmasks (bit i is index i+1).
bool lex_less_mask(std::uint64_t a, std::uint64_t b);

}  // namespace pgl
