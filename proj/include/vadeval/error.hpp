#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vadeval {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. line/column are 1-based; 0 means "not applicable".
// Records without a line (nested JSON elements) carry a textual locator.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : Error(locate(what, line, column)), line_(line), column_(column) {}
  ParseError(const std::string& what, const std::string& record)
      : Error(what + " (" + record + ")"), line_(0), column_(0) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string locate(const std::string& what, std::size_t line, std::size_t column) {
    std::string s = what + " (line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s + ")";
  }

  std::size_t line_;
  std::size_t column_;
};

// Inputs are well-formed but inconsistent with each other.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A metric is undefined for the given inputs.
class ComputeError : public Error {
 public:
  using Error::Error;
};

}  // namespace vadeval
