#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kcl {

enum class ErrorCode {
  InvalidArgument,
  NonFiniteEvaluation,
  InsufficientSamples,
  UnsupportedDomain,
  OrderViolation,
  SingularGram,
  GapViolation,
  PoleHit,
  EndpointOnSpectrum,
  DomainViolation,
  MeshTooCoarse,
  ConvergenceFailure,
  ScheduleExceedsSpectrum,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::GapViolation: return "GapViolation";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::EndpointOnSpectrum: return "EndpointOnSpectrum";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::MeshTooCoarse: return "MeshTooCoarse";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::ScheduleExceedsSpectrum: return "ScheduleExceedsSpectrum";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace kcl
