#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fmc {

enum class ErrorCode {
  // input errors
  MalformedLine,
  SelfLoop,
  EndpointOutOfRange,
  EmptyInput,
  NotSquare,
  NegativeEntry,
  RowSumNotSubstochastic,
  BadHeader,
  BadProbability,
  BadPartition,
  IndexOutOfRange,
  DimensionMismatch,
  DomainMismatch,
  InvalidArgument,
  // numerical errors
  Singular,
  NoConvergence,
  UnderflowSuspected,
  NotSubstochastic,
  BoundViolated,
  EngineUnavailable,
  ResultMismatch,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::EndpointOutOfRange: return "EndpointOutOfRange";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::RowSumNotSubstochastic: return "RowSumNotSubstochastic";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UnderflowSuspected: return "UnderflowSuspected";
    case ErrorCode::NotSubstochastic: return "NotSubstochastic";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::EngineUnavailable: return "EngineUnavailable";
    case ErrorCode::ResultMismatch: return "ResultMismatch";
  }
  return "Unknown";
}

/// True for failures of the numerics (as opposed to bad input).
constexpr bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::Singular:
    case ErrorCode::NoConvergence:
    case ErrorCode::UnderflowSuspected:
    case ErrorCode::NotSubstochastic:
    case ErrorCode::BoundViolated:
    case ErrorCode::EngineUnavailable:
    case ErrorCode::ResultMismatch:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fmc
