#include "gaussdense/error.hpp"

namespace gaussdense {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ZeroWeightSample: return "ZeroWeightSample";
    case ErrorCode::EmptyCurve: return "EmptyCurve";
    case ErrorCode::NonPowerOfTwo: return "NonPowerOfTwo";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::InfiniteBound: return "InfiniteBound";
    case ErrorCode::MissingMmc: return "MissingMmc";
    case ErrorCode::OffGridShift: return "OffGridShift";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::StagnatedPursuit: return "StagnatedPursuit";
    case ErrorCode::NotInSpace: return "NotInSpace";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::NonFiniteWeight: return "NonFiniteWeight";
    case ErrorCode::AtomOutOfDomain: return "AtomOutOfDomain";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace gaussdense
