#pragma once

#include <stdexcept>
#include <string>

namespace planes4 {

// Bad parameters, malformed files, violated preconditions. The CLI maps these
// to exit status 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation ran but its result cannot be trusted (solver residual too
// large, invariant broken). The CLI maps these to exit status 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

}  // namespace planes4
