#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace openqfi {

enum class ErrorCode {
  NotHermitian,
  NotSymmetric,
  NoConvergence,
  BadDimension,
  DimensionMismatch,
  InvalidParams,
  InvalidState,
  UnsupportedResetState,
  DegenerateLimit,
  DegenerateSteadyState,
  TooManyParticles,
  NotNormalized,
  OutOfRange,
  NonPositiveF,
  NoSignChange,
  Validation,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Compact %g rendering of a number for error messages.
std::string format_number(double x);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the error-code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace openqfi
