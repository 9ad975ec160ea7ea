#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prolate {

/// Raised when a precondition on the inputs is violated.
class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a dense eigensolve does not converge.
class numerical_failure : public std::runtime_error {
 public:
  numerical_failure(const std::string& what, std::size_t matrix_order)
      : std::runtime_error(what + " (matrix order " + std::to_string(matrix_order) + ")"),
        matrix_order_(matrix_order) {}

  std::size_t matrix_order() const noexcept { return matrix_order_; }

 private:
  std::size_t matrix_order_;
};

}  // namespace prolate
