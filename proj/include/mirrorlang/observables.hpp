#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "mirrorlang/dynamics.hpp"

namespace mirrorlang {

struct EnsembleConfig {
  ReducedParams params;
  UniformGrid grid;
  LangevinMode mode = LangevinMode::Vacuum;
  LangevinOptions options;
  InitialCondition ic;
  Eigen::Index n_paths = 2;
  std::uint64_t seed = 0;
  bool zero_noise = false;
  double vacuum_oversampling = 4.0;
  int threads = 0;  // 0 selects std::thread::hardware_concurrency()
  Eigen::Index n_batches = 20;
};

/// Per-time-bin ensemble estimators. Paths are merged in index order, so
/// the result does not depend on the thread count.
struct EnsembleStats {
  UniformGrid grid;
  Eigen::VectorXd mean_q;
  Eigen::VectorXd mean_v;
  Eigen::VectorXd var_q;
  Eigen::VectorXd var_v;
  Eigen::VectorXd se_var_v;
  /// var_v within contiguous path batches (rows), for resampling errors.
  Eigen::MatrixXd batch_var_v;
  Eigen::Index n_paths = 0;
  std::uint64_t master_seed = 0;
};

/// Noise law driving the ensemble for its mode.
NoiseSpec ensemble_noise_spec(const EnsembleConfig& config);

EnsembleStats ensemble_run(const EnsembleConfig& config);

struct TimeWindow {
  double begin = 0;
  double end = 0;
};

/// [10 / omega0, 0.1 t_relax] for the mode's relaxation time.
TimeWindow default_heating_window(const ReducedParams& params, LangevinMode mode,
                                  GammaMode gamma_mode = GammaMode::FdtConsistent);

struct SlopeEstimate {
  double slope = 0;
  double se = 0;
  double intercept = 0;
};

/// Weighted least-squares slope of var_v(t) in the window; the error comes
/// from the spread of the same fit over path batches.
SlopeEstimate variance_slope(const EnsembleStats& stats, TimeWindow window);

enum class RelaxationRegime { Vacuum, Thermal };

/// Natural units: 720 pi^2 m / (A w0^4) or m / gamma_T.
double relaxation_time(const PhysicalParams& params, RelaxationRegime regime,
                       GammaMode gamma_mode = GammaMode::FdtConsistent);
/// Simulation units.
double relaxation_time(const ReducedParams& params, RelaxationRegime regime,
                       GammaMode gamma_mode = GammaMode::FdtConsistent);

/// Vacuum heating rate A w0^5 / (1440 pi^2 m^2).
double vacuum_heating_rate(const PhysicalParams& params);
double vacuum_heating_rate(const ReducedParams& params);

/// Thermal heating rate D / (2 m^2).
double thermal_heating_rate(const PhysicalParams& params);
double thermal_heating_rate(const ReducedParams& params);

/// Delta l_max / l_0 = (1 / (l_0 w0)) sqrt(k_B T / m).
double max_fluctuation_ratio(const PhysicalParams& params);

/// Stationary <v^2> of the damped oscillator under the mode's noise, from
/// the Lyapunov equation of (q, v, eta); D / (2 gamma) for white noise.
double stationary_velocity_variance(const ReducedParams& params, LangevinMode mode,
                                    GammaMode gamma_mode = GammaMode::FdtConsistent);

/// Kinetic-energy gain over one period, (m / 2) * heating rate * 2 pi / w0.
double energy_gain_per_cycle(const PhysicalParams& params);

struct EquipartitionReport {
  double ratio = 0;  // m <v^2> / k_B T over the window
  double ratio_se = 0;
  double tolerance = 0.02;
  bool pass = false;
  std::string reason;
};

/// Compares the stationary velocity variance with k_B T. Throws
/// NotStationary when the window starts before 5 relaxation times or var_v
/// drifts by more than 3 standard errors between the window halves.
EquipartitionReport equipartition_check(const EnsembleStats& stats, const ReducedParams& params, TimeWindow window,
                                        GammaMode gamma_mode = GammaMode::FdtConsistent, double tolerance = 0.02);

}  // namespace mirrorlang
