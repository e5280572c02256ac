#pragma once

#include <stdexcept>
#include <string>

namespace quadrl {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite state or other simulation-invalidating condition.
struct SimFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tensor/vector dimension mismatch.
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace quadrl
