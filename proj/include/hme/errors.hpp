#pragma once

#include <stdexcept>
#include <string>

namespace hme {

/// Raised when an input violates a documented invariant (bad state, bad
/// argument, malformed file). The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical procedure fails: eigensolver breakdown, CFL
/// violation, a state leaving the realizable set. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hme
