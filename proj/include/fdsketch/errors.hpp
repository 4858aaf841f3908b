#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdsketch {

/// Shape disagreement between operands (matrix dims, batch rows, ...).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside its documented domain (ell out of range, k too large, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Iterative eigensolver failed to reach its stopping criterion.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double off_diagonal_norm)
      : std::runtime_error(what), off_diagonal_norm_(off_diagonal_norm) {}
  double off_diagonal_norm() const noexcept { return off_diagonal_norm_; }

 private:
  double off_diagonal_norm_;
};

/// Malformed input. `line` is 1-based for text input, 0 when not line-oriented.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fdsketch
