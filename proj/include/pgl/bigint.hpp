#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace pgl {

using Int = boost::multiprecision::cpp_int;

inline std::string to_decimal(const Int& x) { return x.str(); }

// Parses an optionally signed run of decimal digits. Throws ValidationError
// on anything else (implemented in bigint.cpp to keep the error type out of
// this header's dependencies).
Int parse_decimal(std::string_view text);

}  // namespace pgl
