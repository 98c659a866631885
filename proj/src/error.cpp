#include "mirrorlang/error.hpp"

namespace mirrorlang {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::PerturbativityViolation: return "PerturbativityViolation";
    case ErrorCode::NegativeRenormalizedMass: return "NegativeRenormalizedMass";
    case ErrorCode::ZeroTemperature: return "ZeroTemperature";
    case ErrorCode::ZeroSeparation: return "ZeroSeparation";
    case ErrorCode::PoleOnLightcone: return "PoleOnLightcone";
    case ErrorCode::BeyondCutoff: return "BeyondCutoff";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::NyquistViolation: return "NyquistViolation";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::FitDiverged: return "FitDiverged";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::NotStationary: return "NotStationary";
    case ErrorCode::ZeroAmplitude: return "ZeroAmplitude";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::ConflictingKeys: return "ConflictingKeys";
    case ErrorCode::MissingRequired: return "MissingRequired";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace mirrorlang
