#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iching {

enum class ErrorCode {
  WrongLineCount,
  IndexOutOfRange,
  CorpusMissingEntry,
  SchemaError,
  IoError,
  DuplicateLineIndex,
  EmptyLayers,
  InvalidPlan,
  InvalidArgument,
  IncompleteCasting,
  ProviderUnavailable,
  MalformedProviderOutput,
  PitchOutOfRange,
  InvalidState,
  EmptyQuestion,
  PlanNotReady,
  LogCorrupt,
  UnknownSession,
  Busy,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported as an Error. `detail` carries
// auxiliary diagnostics, e.g. the raw provider output that failed validation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace iching
