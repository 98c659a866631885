#pragma once

#include <stdexcept>
#include <string>

namespace mirrorlang {

enum class ErrorCode {
  InvalidParams,
  PerturbativityViolation,
  NegativeRenormalizedMass,
  ZeroTemperature,
  ZeroSeparation,
  PoleOnLightcone,
  BeyondCutoff,
  DomainMismatch,
  GridMismatch,
  InvalidGrid,
  NyquistViolation,
  EmptyGrid,
  StepTooCoarse,
  BlowUp,
  FitDiverged,
  TooShort,
  WindowTooShort,
  NotStationary,
  ZeroAmplitude,
  SyntaxError,
  UnknownKey,
  ConflictingKeys,
  MissingRequired,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mirrorlang
