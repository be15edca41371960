#include "pgl/subset.hpp"

#include <algorithm>
#include <bit>

#include "pgl/errors.hpp"

namespace pgl {

SubsetAssignment SubsetAssignment::from_indices(std::vector<std::uint32_t> indices) {
  std::sort(indices.begin(), indices.end());
  if (!indices.empty() && indices.front() == 0) {
    throw ValidationError("subset indices are 1-based; 0 is not a valid index");
  }
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw ValidationError("subset contains a duplicate index");
  }
  SubsetAssignment s;
  s.indices_ = std::move(indices);
  return s;
}

SubsetAssignment SubsetAssignment::from_mask(std::uint64_t mask) {
  SubsetAssignment s;
  s.indices_.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask != 0) {
    const unsigned b = static_cast<unsigned>(std::countr_zero(mask));
    s.indices_.push_back(b + 1);
    mask &= mask - 1;
  }
  return s;
}

bool SubsetAssignment::contains(std::uint32_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::uint64_t SubsetAssignment::to_mask() const {
  if (max_index() > 64) {
    throw ValidationError("subset does not fit a 64-bit mask");
  }
  std::uint64_t mask = 0;
  for (const std::uint32_t i : indices_) mask |= 1ull << (i - 1);
  return mask;
}

SubsetAssignment SubsetAssignment::complement_within(std::uint32_t n) const {
  if (max_index() > n) {
    throw ValidationError("subset index exceeds the universe size");
  }
  SubsetAssignment s;
  s.indices_.reserve(n - indices_.size());
  auto it = indices_.begin();
  for (std::uint32_t i = 1; i <= n; ++i) {
    if (it != indices_.end() && *it == i) {
      ++it;
    } else {
      s.indices_.push_back(i);
    }
  }
  return s;
}

SubsetAssignment SubsetAssignment::canonical_within(std::uint32_t n) const {
  if (contains(1)) return *this;
  return complement_within(n);
}

std::string SubsetAssignment::spin_string(std::uint32_t n) const {
  std::string out;
  out.reserve(3 * n);
  auto it = indices_.begin();
  for (std::uint32_t i = 1; i <= n; ++i) {
    if (i > 1) out.push_back(' ');
    if (it != indices_.end() && *it == i) {
      out += "+1";
      ++it;
    } else {
      out += "-1";
    }
  }
  return out;
}

bool lex_less(const SubsetAssignment& a, const SubsetAssignment& b) {
  return std::lexicographical_compare(a.indices().begin(), a.indices().end(),
                                      b.indices().begin(), b.indices().end());
}

bool lex_less_mask(std::uint64_t a, std::uint64_t b) {
  while (a != 0 && b != 0) {
    const unsigned la = static_cast<unsigned>(std::countr_zero(a));
    const unsigned lb = static_cast<unsigned>(std::countr_zero(b));
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;  // proper prefix compares smaller
}

}  // namespace pgl
