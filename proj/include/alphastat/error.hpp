#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alphastat {

enum class ErrorCode {
  InvalidArgument,
  InvalidU,
  DegenerateState,
  NotUnitSpeed,
  TooFewSamples,
  PoleTouching,
  InvalidRange,
  ConstraintViolated,
  InconsistentInitialData,
  StepTooLarge,
  OutsideDomain,
  RadicandNonpositive,
  EmptyLevelSet,
  InvalidRadius,
  AntipodalEndpoints,
  PoleCollision,
  HypothesisViolated,
  EndpointsNotOnGrid,
  Disconnected,
  MalformedInput,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidU: return "invalid-u";
    case ErrorCode::DegenerateState: return "degenerate-state";
    case ErrorCode::NotUnitSpeed: return "not-unit-speed";
    case ErrorCode::TooFewSamples: return "too-few-samples";
    case ErrorCode::PoleTouching: return "pole-touching";
    case ErrorCode::InvalidRange: return "invalid-range";
    case ErrorCode::ConstraintViolated: return "constraint-violated";
    case ErrorCode::InconsistentInitialData: return "inconsistent-initial-data";
    case ErrorCode::StepTooLarge: return "step-too-large";
    case ErrorCode::OutsideDomain: return "outside-domain";
    case ErrorCode::RadicandNonpositive: return "radicand-nonpositive";
    case ErrorCode::EmptyLevelSet: return "empty-level-set";
    case ErrorCode::InvalidRadius: return "invalid-radius";
    case ErrorCode::AntipodalEndpoints: return "antipodal-endpoints";
    case ErrorCode::PoleCollision: return "pole-collision";
    case ErrorCode::HypothesisViolated: return "hypothesis-violated";
    case ErrorCode::EndpointsNotOnGrid: return "endpoints-not-on-grid";
    case ErrorCode::Disconnected: return "disconnected";
    case ErrorCode::MalformedInput: return "malformed-input";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace alphastat
