#pragma once

#include <stdexcept>
#include <string>

namespace hdim {

// Thrown when an enumeration (quotient carrier, BFS closure, pair check)
// would materialize more state than the caller's budget allows.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A structural precondition failed: law shape, level rule, subgroup closure,
// mismatched rings or truncations.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Scenario text could not be parsed. Carries the 1-based source line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace hdim
