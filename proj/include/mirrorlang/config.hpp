#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mirrorlang/dynamics.hpp"
#include "mirrorlang/params.hpp"

namespace mirrorlang {

/// Parsed `key = value` configuration.
///
/// Exactly one parameter block is present: the dimensional block (m_kg,
/// area_cm2, omega0_per_s, ...) or the dimensionless one (epsilon, amp0,
/// theta_T). `reduced` is always filled, from reduce() in the first case.
struct ScenarioConfig {
  std::optional<PhysicalParams> physical;
  ReducedParams reduced;

  // Raw dimensional inputs, kept for reporting and hashing.
  double m_kg = 0;
  double area_cm2 = 0;
  double omega0_per_s = 0;
  double T_keV = 0;
  double l0_cm = -1;
  double theta0_s = 0;

  double t_max = 0;
  double dt = 0;
  std::optional<std::int64_t> n_paths;
  std::optional<std::uint64_t> seed;

  GammaMode gamma_mode = GammaMode::FdtConsistent;
  ThermalSigmaVariant sigma_variant = ThermalSigmaVariant::Leading;
  double max_epsilon = ReducedParams::default_max_epsilon;
  double oversampling = 4.0;
  std::optional<double> q0;
  std::optional<double> v0;
  std::optional<double> window_begin;
  std::optional<double> window_end;

  int threads = 0;  // execution only, not hashed

  /// Stable `key=value` lines of every semantic field, sorted by key.
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const;
};

/// Parses configuration text. Errors carry the 1-based line number:
/// SyntaxError, UnknownKey, ConflictingKeys, MissingRequired, InvalidParams.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config(const std::string& path);

/// Re-derives `reduced` after fields were overridden, and enforces that a
/// seed accompanies n_paths.
void finalize(ScenarioConfig& config);

const char* to_string(ThermalSigmaVariant v) noexcept;

}  // namespace mirrorlang
