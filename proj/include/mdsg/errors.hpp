#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdsg {

/// Element does not belong to the group (kind or size mismatch, not a bijection, ...).
class InvalidElementError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A resource guard was hit; `cap()` is the limit that was exceeded.
class TooLargeError : public std::length_error {
 public:
  TooLargeError(const std::string& what, std::size_t cap) : std::length_error(what), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// Metric and group (or label and group) do not belong together.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed form was requested outside the domain where it is defined.
class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed ranking or CSV input; `line()` is 1-based (0 when not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mdsg
