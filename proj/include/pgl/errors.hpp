#pragma once

#include <stdexcept>
#include <string>

namespace pgl {

// Process exit codes shared by the library error types and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitCapRefusal = 4;
inline constexpr int kExitBudgetExhausted = 5;

// Malformed or out-of-contract input values.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Work refused up front because a size or memory cap would be exceeded.
class CapRefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pgl
