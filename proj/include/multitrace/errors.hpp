#pragma once

#include <stdexcept>
#include <string>

namespace multitrace {

// Thrown when an input exceeds a documented desk-scale cap.
struct SizeError : std::runtime_error {
  explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched ground sets, alphabets, weights, or otherwise invalid arguments.
struct ArgumentError : std::invalid_argument {
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation of a rational function at a zero of its denominator.
struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite samples, eigensolver failures and similar floating-point trouble.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// An internal exactness check failed (e.g. a trace expectation of a
// self-adjoint input came out with a nonzero imaginary part).
struct ConsistencyError : std::logic_error {
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace multitrace
