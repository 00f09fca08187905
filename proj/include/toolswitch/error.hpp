#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace toolswitch {

enum class ErrorCode {
  NoJobs,
  JobTooLarge,
  CapacityNotBelowToolCount,
  EmptyJob,
  BadToolIndex,
  LengthMismatch,
  NotAPermutation,
  BadRange,
  NegativeResult,
  BudgetExceeded,
  TooManyJobs,
  NotFullCapacity,
  ParseError,
  InvalidSpec,
  GenerationFailed,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoJobs: return "NoJobs";
    case ErrorCode::JobTooLarge: return "JobTooLarge";
    case ErrorCode::CapacityNotBelowToolCount: return "CapacityNotBelowToolCount";
    case ErrorCode::EmptyJob: return "EmptyJob";
    case ErrorCode::BadToolIndex: return "BadToolIndex";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::NegativeResult: return "NegativeResult";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::TooManyJobs: return "TooManyJobs";
    case ErrorCode::NotFullCapacity: return "NotFullCapacity";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Single exception type for the library. `where()` carries the offending
/// coordinate when one exists: a 1-based job for validation errors, a 1-based
/// line for parse errors, a state count for BudgetExceeded.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> where = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        where_(where) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> where_;
};

}  // namespace toolswitch
