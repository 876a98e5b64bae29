#pragma once

#include <stdexcept>
#include <string>

namespace qtomo {

enum class ErrorCode {
  InvalidArgument = 1,
  NotHermitian,
  NoConvergence,
  QuadratureFailure,
  InvalidState,
  RecordMismatch,
  EmptyStream,
  Io,
  Format,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Quadrature ran out of refinement levels; carries the last two estimates.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double previous, double last)
      : Error(ErrorCode::QuadratureFailure, what),
        previous_(previous),
        last_(last) {}

  double previous_estimate() const noexcept { return previous_; }
  double last_estimate() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace qtomo
