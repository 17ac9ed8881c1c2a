#include "iching/error.hpp"

namespace iching {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::WrongLineCount: return "wrong_line_count";
    case ErrorCode::IndexOutOfRange: return "index_out_of_range";
    case ErrorCode::CorpusMissingEntry: return "corpus_missing_entry";
    case ErrorCode::SchemaError: return "schema_error";
    case ErrorCode::IoError: return "io_error";
    case ErrorCode::DuplicateLineIndex: return "duplicate_line_index";
    case ErrorCode::EmptyLayers: return "empty_layers";
    case ErrorCode::InvalidPlan: return "invalid_plan";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::IncompleteCasting: return "incomplete_casting";
    case ErrorCode::ProviderUnavailable: return "provider_unavailable";
    case ErrorCode::MalformedProviderOutput: return "malformed_provider_output";
    case ErrorCode::PitchOutOfRange: return "pitch_out_of_range";
    case ErrorCode::InvalidState: return "invalid_state";
    case ErrorCode::EmptyQuestion: return "empty_question";
    case ErrorCode::PlanNotReady: return "plan_not_ready";
    case ErrorCode::LogCorrupt: return "log_corrupt";
    case ErrorCode::UnknownSession: return "unknown_session";
    case ErrorCode::Busy: return "busy";
  }
  return "unknown";
}

}  // namespace iching
