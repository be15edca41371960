#include "pgl/bigint.hpp"

#include <cctype>

#include "pgl/errors.hpp"

namespace pgl {

Int parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i >= text.size()) {
    throw ValidationError("empty integer literal");
  }
  Int value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') {
      throw ValidationError("invalid integer literal: '" + std::string(text) + "'");
    }
    value *= 10;
    value += c - '0';
  }
  return negative ? Int(-value) : value;
}

}  // namespace pgl
