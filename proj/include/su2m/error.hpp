#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace su2m {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  DimensionMismatch,
  NotSymmetricContext,
  NotIntegerSpin,
  ClosureOverflow,
  NonIntegerTrace,
  ZeroProjection,
  ZeroNorm,
  NoTrivialIrrep,
  NotOptimalProbe,
  SingularOutcome,
  SingularCovariance,
  SingularQfim,
  InvalidArgument,
  ParseError,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace su2m
