#include "slicedw/error.hpp"

namespace slicedw {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSample: return "InvalidSample";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::InvalidLag: return "InvalidLag";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::ZeroNormRow: return "ZeroNormRow";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveError: return "NonPositiveError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace slicedw
