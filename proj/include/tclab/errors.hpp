#pragma once

#include <stdexcept>
#include <string>

namespace tclab {

enum class ErrorCode {
  CompositionNotZero,
  DimensionMismatch,
  UnknownFamily,
  OrderTooLarge,
  TooManyTuples,
  RankTooLarge,
  GroupMismatch,
  TooLarge,
  DegreeOutOfRange,
  NotExact,
  NoSplitting,
  LiftFailed,
  CrossCheckFailed,
  ConversionFailed,
  ChainMapCheckFailed,
  ExactnessCheckFailed,
  SearchBudgetExceeded,
  IdentityCheckFailed,
  UnknownSpec,
  IoError,
  InvalidInput,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace tclab
