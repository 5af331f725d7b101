#include "tclab/errors.hpp"

namespace tclab {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CompositionNotZero: return "CompositionNotZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::TooManyTuples: return "TooManyTuples";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::NoSplitting: return "NoSplitting";
    case ErrorCode::LiftFailed: return "LiftFailed";
    case ErrorCode::CrossCheckFailed: return "CrossCheckFailed";
    case ErrorCode::ConversionFailed: return "ConversionFailed";
    case ErrorCode::ChainMapCheckFailed: return "ChainMapCheckFailed";
    case ErrorCode::ExactnessCheckFailed: return "ExactnessCheckFailed";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::IdentityCheckFailed: return "IdentityCheckFailed";
    case ErrorCode::UnknownSpec: return "UnknownSpec";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace tclab
