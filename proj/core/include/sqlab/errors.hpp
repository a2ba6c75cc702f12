#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sqlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by a zero rational, or a zero element in a divisor set.
class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (rational literal, set expression, map spec,
/// set or point file). Carries the byte offset of the first bad token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

/// A named precondition or hypothesis of an operation failed.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& check, const std::string& detail)
      : Error(check + ": " + detail), check_(check) {}
  /// Name of the failed check, e.g. "spacing" or "shift-order".
  const std::string& check() const { return check_; }

 private:
  std::string check_;
};

/// An intermediate set grew past EvalOptions::max_set_size.
class SizeLimitError : public Error {
 public:
  explicit SizeLimitError(long long limit)
      : Error("intermediate set exceeds size cap " + std::to_string(limit)),
        limit_(limit) {}
  long long limit() const { return limit_; }

 private:
  long long limit_ = 0;
};

}  // namespace sqlab
