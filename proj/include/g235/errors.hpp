#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace g235 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::string token, std::size_t offset)
      : Error("unknown identifier '" + token + "' at offset " + std::to_string(offset)),
        token_(std::move(token)),
        offset_(offset) {}
  const std::string& token() const noexcept { return token_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string token_;
  std::size_t offset_;
};

/// Numeric evaluation left the domain of an operation (ln of a non-positive
/// value, division by ~0, non-finite intermediate).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A frame, linear system or metric degenerated at a sample point.
class DegeneracyError : public Error {
 public:
  explicit DegeneracyError(const std::string& what,
                           std::optional<std::size_t> point = std::nullopt)
      : Error(point ? what + " (sample point " + std::to_string(*point) + ")" : what),
        point_(point) {}
  std::optional<std::size_t> point() const noexcept { return point_; }

 private:
  std::optional<std::size_t> point_;
};

/// Malformed problem file or command-line value; `line` is 1-based, 0 if unknown.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ChartMismatch : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// The commutator of two embedded algebra elements left the block pattern.
class ClosureError : public Error {
 public:
  using Error::Error;
};

}  // namespace g235
