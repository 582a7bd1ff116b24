#pragma once

#include <stdexcept>
#include <string>

namespace jpirrev {

// Bad or missing configuration (parameters, flags, job setup).
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A generator or integrator produced a non-finite value.
struct numeric_overflow_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace jpirrev
