#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace germinv {

// Failure classes surfaced by the library. The CLI maps each kind to an
// exit code, so new error types must pick one of these.
enum class ErrorKind {
  input,          // malformed text, ring mismatch, index out of range
  not_finite,     // infinite colength, non-isolated singularity, not A-finite
  bound_exceeded, // a configured degree/step/k cap was hit
  inconsistency,  // two routes that must agree did not
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

struct ParseError : InputError {
  ParseError(const std::string& what, std::size_t pos)
      : InputError(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct NotFiniteError : Error {
  explicit NotFiniteError(const std::string& what) : Error(ErrorKind::not_finite, what) {}
};

struct BoundExceeded : Error {
  explicit BoundExceeded(const std::string& what) : Error(ErrorKind::bound_exceeded, what) {}
};

struct InconsistencyError : Error {
  explicit InconsistencyError(const std::string& what) : Error(ErrorKind::inconsistency, what) {}
};

}  // namespace germinv
