#include "pgl/instance.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "pgl/errors.hpp"

namespace pgl {

Instance::Instance(std::vector<Int> weights, std::string label)
    : weights_(std::move(weights)), label_(std::move(label)) {
  if (weights_.empty()) {
    throw ValidationError("an instance requires at least one weight");
  }
  for (const Int& w : weights_) {
    if (w < 0) {
      throw ValidationError("negative weight " + to_decimal(w) + " is not allowed");
    }
    if (w == 0) has_zero_ = true;
    total_ += w;
  }
}

EnergyValue energy(const Instance& instance, const SubsetAssignment& subset) {
  if (subset.max_index() > instance.size()) {
    throw ValidationError("subset index " + std::to_string(subset.max_index()) +
                          " exceeds instance size " + std::to_string(instance.size()));
  }
  Int inside = 0;
  for (const std::uint32_t i : subset.indices()) inside += instance.weight(i);
  Int disc = inside;
  disc += inside;
  disc -= instance.total();
  return EnergyValue{disc, Int(disc * disc)};
}

SubsetAssignment complement(const Instance& instance, const SubsetAssignment& subset) {
  if (subset.max_index() > instance.size()) {
    throw ValidationError("subset index exceeds instance size");
  }
  return subset.complement_within(instance.size());
}

Instance generate_instance(std::uint32_t n, unsigned bits, std::uint64_t seed) {
  if (n == 0) throw ValidationError("cannot generate an empty instance");
  if (bits == 0) throw ValidationError("bit width must be positive");
  std::mt19937_64 eng(seed);
  const unsigned words = (bits + 63) / 64;
  const unsigned top_bits = bits % 64 == 0 ? 64 : bits % 64;
  const std::uint64_t top_mask = top_bits == 64 ? ~0ull : (1ull << top_bits) - 1;
  std::vector<Int> weights;
  weights.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    Int value;
    do {
      value = 0;
      for (unsigned w = 0; w < words; ++w) {
        std::uint64_t word = eng();
        if (w + 1 == words) word &= top_mask;
        value |= Int(word) << (64 * w);
      }
    } while (value == 0);
    weights.push_back(std::move(value));
  }
  std::ostringstream label;
  label << "gen-n" << n << "-b" << bits << "-s" << seed;
  return Instance(std::move(weights), label.str());
}

namespace {

Instance parse_text_instance(const std::string& content) {
  std::vector<Int> weights;
  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) break;
      const std::size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      const std::string token = line.substr(start, pos - start);
      try {
        weights.push_back(parse_decimal(token));
      } catch (const ValidationError&) {
        throw ValidationError("parse error at line " + std::to_string(lineno) + ", offset " +
                              std::to_string(start + 1) + ": invalid integer '" + token + "'");
      }
    }
  }
  return Instance(std::move(weights));
}

Instance parse_json_instance(const std::string& content) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("instance document must be a JSON object");
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw ValidationError("'label' must be a string");
    label = doc["label"].get<std::string>();
  }
  if (!doc.contains("weights") || !doc["weights"].is_array()) {
    throw ValidationError("instance document requires a 'weights' array");
  }
  std::vector<Int> weights;
  weights.reserve(doc["weights"].size());
  for (const auto& w : doc["weights"]) {
    if (!w.is_string()) {
      throw ValidationError("weights must be decimal strings (arbitrary precision)");
    }
    weights.push_back(parse_decimal(w.get<std::string>()));
  }
  return Instance(std::move(weights), std::move(label));
}

}  // namespace

Instance load_instance(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  std::size_t i = 0;
  while (i < content.size() && std::isspace(static_cast<unsigned char>(content[i]))) ++i;
  if (i < content.size() && content[i] == '{') return parse_json_instance(content);
  return parse_text_instance(content);
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file: " + path);
  return load_instance(in);
}

void save_instance_text(const Instance& instance, std::ostream& out) {
  bool first = true;
  for (const Int& w : instance.weights()) {
    if (!first) out << ' ';
    out << w;
    first = false;
  }
  out << '\n';
}

void save_instance_json(const Instance& instance, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["label"] = instance.label();
  auto& arr = doc["weights"] = nlohmann::ordered_json::array();
  for (const Int& w : instance.weights()) arr.push_back(to_decimal(w));
  out << doc.dump(2) << '\n';
}

}  // namespace pgl
