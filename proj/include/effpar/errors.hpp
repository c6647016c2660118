#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace effpar {

/// Argument outside the documented domain of an operation.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Measured values that cannot come from a real run (E > 1, S > k).
class InconsistentMeasurement : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// P / (1 - alpha) with (1 - alpha) == 0: the ceiling does not exist.
class UnboundedLimit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The target is already reachable by a single processor.
class AlreadyAchievable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Timeline without payload or without duration.
class DegenerateScenario : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input file is missing a required column or header.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace effpar
