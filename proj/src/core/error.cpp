#include "mantlevis/core/error.hpp"

namespace mantlevis {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::TrailingData: return "TrailingData";
    case ErrorCode::DuplicateVariable: return "DuplicateVariable";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::EmptyTimeList: return "EmptyTimeList";
    case ErrorCode::Io: return "Io";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::MissingVelocity: return "MissingVelocity";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::SeedOutsideShell: return "SeedOutsideShell";
    case ErrorCode::MissingVariable: return "MissingVariable";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::GenerationMismatch: return "GenerationMismatch";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::BadPayload: return "BadPayload";
    case ErrorCode::NoDatasetLoaded: return "NoDatasetLoaded";
  }
  return "Unknown";
}

}  // namespace mantlevis
