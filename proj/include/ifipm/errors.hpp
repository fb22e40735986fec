#pragma once

#include <stdexcept>
#include <string>

namespace ifipm {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SymmetryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotPositiveDefiniteError : std::runtime_error {
  double lambda_min;
  explicit NotPositiveDefiniteError(double lmin)
      : std::runtime_error("matrix not positive definite, lambda_min = " +
                           std::to_string(lmin)),
        lambda_min(lmin) {}
};

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the constraint matrices are linearly dependent; carries the
// index of the first constraint that adds no new rank.
struct RankError : std::runtime_error {
  int constraint_index;
  explicit RankError(int idx)
      : std::runtime_error("linearly dependent constraint set, constraint " +
                           std::to_string(idx) + " is redundant"),
        constraint_index(idx) {}
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("parse error at line " + std::to_string(line_) +
                           ": " + what_),
        line(line_) {}
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ifipm
