#include "su2m/error.hpp"

namespace su2m {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymmetricContext: return "NotSymmetricContext";
    case ErrorCode::NotIntegerSpin: return "NotIntegerSpin";
    case ErrorCode::ClosureOverflow: return "ClosureOverflow";
    case ErrorCode::NonIntegerTrace: return "NonIntegerTrace";
    case ErrorCode::ZeroProjection: return "ZeroProjection";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::NoTrivialIrrep: return "NoTrivialIrrep";
    case ErrorCode::NotOptimalProbe: return "NotOptimalProbe";
    case ErrorCode::SingularOutcome: return "SingularOutcome";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::SingularQfim: return "SingularQfim";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace su2m
