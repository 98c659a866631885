#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mirrorlang/config.hpp"
#include "mirrorlang/fdt.hpp"
#include "mirrorlang/observables.hpp"

namespace mirrorlang {

/// Pass/fail bands for the scenario targets. Versioned with the tool;
/// overridable only through a JSON tolerance file.
struct AcceptanceBands {
  static constexpr int version = 1;

  double fdt_tol = 1e-12;
  double decay_rel = 0.01;
  double shift_rel = 0.01;
  double heating_rel = 0.05;
  double equipartition_rel = 0.02;
  double magnitude_factor = 3.0;
  double quanta_bound = 1e-4;
  double noise_z = 3.0;
};

/// Reads `{"heating_rel": 0.1, ...}`; unknown names are UnknownKey.
AcceptanceBands load_bands(const std::filesystem::path& path);

enum class ExitCode { Ok = 0, Usage = 1, Runtime = 2, StrictFailure = 3 };

/// Configuration and usage problems map to Usage, everything else to Runtime.
ExitCode exit_code_for(ErrorCode code) noexcept;

struct ScenarioResult {
  nlohmann::ordered_json summary;
  bool all_pass = true;
};

enum class KernelRegime { Vacuum, Thermal };
enum class KernelRequestKind { Chi, Sigma };

struct KernelRequest {
  KernelDomain domain = KernelDomain::Frequency;
  KernelRequestKind kind = KernelRequestKind::Chi;
  KernelRegime regime = KernelRegime::Vacuum;
  double min = 0;
  double max = 1;
  Eigen::Index n = 101;
};

/// `MIN:MAX:N`; SyntaxError otherwise.
KernelRequest parse_grid_triple(const std::string& text, KernelRequest base = {});

/// Kernel samples in simulation units; CSV columns grid_value, re, im.
ScenarioResult run_kernels(const ScenarioConfig& config, const KernelRequest& request,
                           const std::filesystem::path& out_csv);

/// Built-in kernels on a 10^4-point grid; JSON mirrors FdtReport.
ScenarioResult run_fdt_check(const ScenarioConfig& config, FdtRegime regime, double tol,
                             const std::filesystem::path& out_json);

enum class NoiseKind { Vacuum, ThermalOU, White };

/// One CSV per path (t, eta) plus autocov.csv and summary.json.
ScenarioResult run_noise(const ScenarioConfig& config, NoiseKind kind, const std::filesystem::path& out_dir,
                         const AcceptanceBands& bands = {});

/// Noise-free vacuum decay with secular fit, perturbative oracle and RG
/// envelope; an ensemble.csv as well when n_paths is set.
ScenarioResult run_decay(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                         const AcceptanceBands& bands = {});

/// Velocity-variance growth of an oscillator started at rest.
ScenarioResult run_heating(const ScenarioConfig& config, KernelRegime regime, const std::filesystem::path& out_dir,
                           const AcceptanceBands& bands = {});

/// Thermal relaxation and equipartition.
ScenarioResult run_thermal(const ScenarioConfig& config, LangevinMode mode, const std::filesystem::path& out_dir,
                           const AcceptanceBands& bands = {});

/// Headline SI numbers from the dimensional block.
ScenarioResult run_report(const ScenarioConfig& config, const std::filesystem::path& out_json,
                          const AcceptanceBands& bands = {});

/// Default grids per scenario, used when the config leaves t_max or dt unset.
UniformGrid decay_grid(const ScenarioConfig& config);
UniformGrid heating_grid(const ScenarioConfig& config, KernelRegime regime);
UniformGrid thermal_grid(const ScenarioConfig& config);

/// Removes wall_time_s so two summaries can be compared byte for byte.
std::string strip_wall_time(const std::string& summary_json);

}  // namespace mirrorlang
