#include <doctest.h>

#include "pgl/errors.hpp"
#include "pgl/subset.hpp"

using pgl::SubsetAssignment;

TEST_CASE("indices are sorted and deduplication is rejected") {
  const auto subset = SubsetAssignment::from_indices({4, 1, 3});
  CHECK(subset.indices() == std::vector<std::uint32_t>{1, 3, 4});
  CHECK(subset.size() == 3);
  CHECK(subset.max_index() == 4);
  CHECK_THROWS_AS(SubsetAssignment::from_indices({2, 2}), pgl::ValidationError);
  CHECK_THROWS_AS(SubsetAssignment::from_indices({0}), pgl::ValidationError);
}

TEST_CASE("mask round trip") {
  const auto subset = SubsetAssignment::from_mask(0b1011);  // indices 1, 2, 4
  CHECK(subset.indices() == std::vector<std::uint32_t>{1, 2, 4});
  CHECK(subset.to_mask() == 0b1011);
  CHECK(SubsetAssignment{}.to_mask() == 0);
  CHECK(SubsetAssignment::from_mask(0).empty());
}

TEST_CASE("membership") {
  const auto subset = SubsetAssignment::from_indices({2, 5});
  CHECK(subset.contains(2));
  CHECK(subset.contains(5));
  CHECK_FALSE(subset.contains(1));
  CHECK_FALSE(subset.contains(4));
}

TEST_CASE("complement within n") {
  const auto subset = SubsetAssignment::from_indices({2, 3});
  CHECK(subset.complement_within(5).indices() == std::vector<std::uint32_t>{1, 4, 5});
  CHECK(SubsetAssignment{}.complement_within(2).indices() == std::vector<std::uint32_t>{1, 2});
  CHECK(SubsetAssignment::from_indices({1, 2}).complement_within(2).empty());
}

TEST_CASE("canonical representative contains index 1") {
  CHECK(SubsetAssignment::from_indices({2, 3}).canonical_within(3).indices() ==
        std::vector<std::uint32_t>{1});
  CHECK(SubsetAssignment::from_indices({1, 3}).canonical_within(3).indices() ==
        std::vector<std::uint32_t>{1, 3});
  CHECK(SubsetAssignment{}.canonical_within(2).indices() == std::vector<std::uint32_t>{1, 2});
}

TEST_CASE("spin strings") {
  CHECK(SubsetAssignment::from_indices({1, 2}).spin_string(4) == "+1 +1 -1 -1");
  CHECK(SubsetAssignment::from_indices({3}).spin_string(3) == "-1 -1 +1");
  CHECK(SubsetAssignment{}.spin_string(1) == "-1");
}

TEST_CASE("lexicographic comparison on index lists") {
  const auto a = SubsetAssignment::from_indices({1, 3});
  const auto b = SubsetAssignment::from_indices({2});
  const auto c = SubsetAssignment::from_indices({1});
  CHECK(lex_less(a, b));       // 1 < 2 decides
  CHECK_FALSE(lex_less(b, a));
  CHECK(lex_less(c, a));       // proper prefix is smaller
  CHECK_FALSE(lex_less(a, a));

  CHECK(pgl::lex_less_mask(0b101, 0b010));   // {1,3} vs {2}
  CHECK_FALSE(pgl::lex_less_mask(0b010, 0b101));
  CHECK(pgl::lex_less_mask(0b001, 0b101));   // {1} vs {1,3}
  CHECK_FALSE(pgl::lex_less_mask(0b101, 0b101));
}
