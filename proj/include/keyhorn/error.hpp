#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace keyhorn {

__extension__ typedef __int128 Int128;

enum class ErrorCode {
  InvalidArgument,
  Parse,
  UniverseMismatch,
  NoBodyInSource,
  LimitExceeded,
  Infeasible,
  VerificationFailed,
  Overflow,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure; `line()` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorCode::Parse,
              line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorCode::Overflow, "integer overflow in addition");
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorCode::Overflow, "integer overflow in multiplication");
  }
  return r;
}

}  // namespace keyhorn
