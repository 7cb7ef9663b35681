#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fibnet {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma evaluated at zero or a negative integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Result not representable as a finite double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Expression text could not be parsed. `offset()` is the 0-based character
/// position where parsing failed.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Runtime failure while evaluating an expression (unbound name, x/0, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDiffError : public Error {
 public:
  using Error::Error;
};

/// Malformed problem file. `line()` is 1-based.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A problem definition violates one of its invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

}  // namespace fibnet
