#include <doctest.h>

#include <sstream>
#include <string>

#include "pgl/errors.hpp"
#include "pgl/instance.hpp"

using pgl::Instance;
using pgl::Int;
using pgl::SubsetAssignment;

TEST_CASE("construction validates the weight list") {
  CHECK_THROWS_AS(Instance(std::vector<Int>{}), pgl::ValidationError);
  CHECK_THROWS_AS(Instance({Int(1), Int(-2)}), pgl::ValidationError);
  const Instance ok({Int(0), Int(5)});
  CHECK(ok.size() == 2);
  CHECK(ok.total() == 5);
  CHECK(ok.has_zero_weight());
  CHECK_FALSE(Instance({Int(1)}).has_zero_weight());
}

TEST_CASE("energy is the squared signed discrepancy") {
  const Instance instance({Int(5), Int(3), Int(1)});
  const auto ev = pgl::energy(instance, SubsetAssignment::from_indices({1}));
  CHECK(ev.discrepancy == 1);  // 5 - (3 + 1)
  CHECK(ev.energy == 1);

  const auto flipped = pgl::energy(instance, SubsetAssignment::from_indices({2, 3}));
  CHECK(flipped.discrepancy == -1);
  CHECK(flipped.energy == 1);

  const auto empty = pgl::energy(instance, SubsetAssignment{});
  CHECK(empty.discrepancy == -9);
  CHECK(empty.energy == 81);

  CHECK_THROWS_AS(pgl::energy(instance, SubsetAssignment::from_indices({4})),
                  pgl::ValidationError);
}

TEST_CASE("complement flips the discrepancy sign") {
  const Instance instance({Int(2), Int(7), Int(4)});
  const auto subset = SubsetAssignment::from_indices({2});
  const auto comp = pgl::complement(instance, subset);
  CHECK(comp.indices() == std::vector<std::uint32_t>{1, 3});
  CHECK(pgl::energy(instance, subset).discrepancy ==
        -pgl::energy(instance, comp).discrepancy);
}

TEST_CASE("generated instances are deterministic and within range") {
  const Instance a = pgl::generate_instance(12, 4, 7);
  const Instance b = pgl::generate_instance(12, 4, 7);
  CHECK(a.weights() == b.weights());
  CHECK(a.label() == "gen-n12-b4-s7");
  for (const Int& w : a.weights()) {
    CHECK(w >= 1);
    CHECK(w <= 15);
  }
  const Instance c = pgl::generate_instance(12, 4, 8);
  CHECK(a.weights() != c.weights());

  const Instance wide = pgl::generate_instance(6, 100, 1);
  bool any_beyond_64_bits = false;
  for (const Int& w : wide.weights()) {
    CHECK(w >= 1);
    CHECK(w < Int(1) << 100);
    if (w > (Int(1) << 64)) any_beyond_64_bits = true;
  }
  CHECK(any_beyond_64_bits);

  CHECK_THROWS_AS(pgl::generate_instance(0, 8, 1), pgl::ValidationError);
  CHECK_THROWS_AS(pgl::generate_instance(4, 0, 1), pgl::ValidationError);
}

TEST_CASE("text parsing accepts comments and reports positions") {
  std::istringstream good("3 1\n# trailing comment\n 4\n");
  const Instance instance = pgl::load_instance(good);
  CHECK(instance.weights() == std::vector<Int>{Int(3), Int(1), Int(4)});

  std::istringstream bad("12 x7\n");
  try {
    pgl::load_instance(bad);
    FAIL("expected a parse failure");
  } catch (const pgl::ValidationError& e) {
    const std::string message = e.what();
    CHECK(message.find("line 1") != std::string::npos);
    CHECK(message.find("x7") != std::string::npos);
  }

  std::istringstream negative("5 -2\n");
  CHECK_THROWS_AS(pgl::load_instance(negative), pgl::ValidationError);

  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(pgl::load_instance(empty), pgl::ValidationError);
}

TEST_CASE("json form round-trips the label") {
  const Instance original({Int(10), Int("123456789012345678901234567890")}, "round-trip");
  std::ostringstream sink;
  pgl::save_instance_json(original, sink);
  std::istringstream source(sink.str());
  const Instance reloaded = pgl::load_instance(source);
  CHECK(reloaded.weights() == original.weights());
  CHECK(reloaded.label() == "round-trip");

  std::istringstream broken("{\"weights\": [\"1\", ");
  CHECK_THROWS_AS(pgl::load_instance(broken), pgl::ValidationError);
  std::istringstream wrong_shape("{\"weights\": \"1 2 3\"}");
  CHECK_THROWS_AS(pgl::load_instance(wrong_shape), pgl::ValidationError);
}

TEST_CASE("text form drops the label but keeps the weights") {
  const Instance original({Int(4), Int(9)}, "will-vanish");
  std::ostringstream sink;
  pgl::save_instance_text(original, sink);
  CHECK(sink.str() == "4 9\n");
  std::istringstream source(sink.str());
  const Instance reloaded = pgl::load_instance(source);
  CHECK(reloaded.weights() == original.weights());
  CHECK(reloaded.label().empty());
}

TEST_CASE("decimal strings parse exactly") {
  CHECK(pgl::parse_decimal("0") == 0);
  CHECK(pgl::parse_decimal("-17") == -17);
  CHECK(pgl::parse_decimal("10000000000000000000000000000000000000000") ==
        Int("10000000000000000000000000000000000000000"));
  CHECK_THROWS_AS(pgl::parse_decimal(""), pgl::ValidationError);
  CHECK_THROWS_AS(pgl::parse_decimal("12a"), pgl::ValidationError);
  CHECK_THROWS_AS(pgl::parse_decimal("+-3"), pgl::ValidationError);
}
