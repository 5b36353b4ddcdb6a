#include "szeta/error.hpp"

namespace szeta {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidAngle: return "InvalidAngle";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::DisjointnessViolation: return "DisjointnessViolation";
    case ErrorCode::CayleyPoleInsideDisc: return "CayleyPoleInsideDisc";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotContracting: return "NotContracting";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::ContourNearZero: return "ContourNearZero";
    case ErrorCode::NonIntegerResult: return "NonIntegerResult";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::CacheError: return "CacheError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace szeta
