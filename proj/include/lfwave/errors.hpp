#pragma once

#include <stdexcept>
#include <string>

namespace lfwave {

// Bad group parameters, malformed input, inconsistent sides or windows.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A window would need more cells than the caller allowed.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lfwave
