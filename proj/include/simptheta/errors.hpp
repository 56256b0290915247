#pragma once

#include <stdexcept>
#include <string>

namespace simptheta {

// Bad user input: malformed complexes, out-of-range levels, violated
// preconditions. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation could not produce a trustworthy answer (non-convergence,
// exhausted search budget). The CLI maps this to exit code 1.
class ComputeError : public std::runtime_error {
 public:
  explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public InputError {
 public:
  explicit DimensionMismatch(const std::string& what) : InputError(what) {}
};

class NotPositiveDefinite : public ComputeError {
 public:
  explicit NotPositiveDefinite(const std::string& what) : ComputeError(what) {}
};

}  // namespace simptheta
