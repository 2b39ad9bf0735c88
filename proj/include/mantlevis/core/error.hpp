#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mantlevis {

enum class ErrorCode {
  InvalidArgument,
  // ingest
  BadMagic,
  UnsupportedVersion,
  TruncatedFile,
  TrailingData,
  DuplicateVariable,
  NonFiniteValue,
  EmptyTimeList,
  Io,
  // preprocess
  DimensionTooSmall,
  MissingVelocity,
  UnknownVariable,
  // pathlines
  TimeOutOfRange,
  SeedOutsideShell,
  // brush
  MissingVariable,
  UnknownPreset,
  // render
  GenerationMismatch,
  // service
  UnknownType,
  BadPayload,
  NoDatasetLoaded,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Format errors carry the byte offset at which parsing failed.
class FormatError : public Error {
 public:
  FormatError(ErrorCode code, std::uint64_t offset, const std::string& message)
      : Error(code, message + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset),
        detail_(message) {}

  std::uint64_t offset() const noexcept { return offset_; }
  /// Message without the offset suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::uint64_t offset_;
  std::string detail_;
};

}  // namespace mantlevis
