#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>

#include "mirrorlang/grid.hpp"
#include "mirrorlang/kernels.hpp"
#include "mirrorlang/noise.hpp"
#include "mirrorlang/params.hpp"

// Simulation gauge: omega0 = m = 1, times in units of 1/omega0.

namespace mirrorlang {

enum class TrajectoryMethod { Perturbative, ReducedLangevin, HarmonicExact };

struct Trajectory {
  UniformGrid grid;
  Eigen::VectorXd q;
  Eigen::VectorXd v;
  ReducedParams params;
  std::optional<std::uint64_t> seed;
  TrajectoryMethod method = TrajectoryMethod::ReducedLangevin;
};

/// Resummed amplitude and phase of the damped mean motion.
///
/// decay_rate is Gamma = A w0^4 / (720 pi^2 m). Two frequency shifts are
/// carried: the resummation result A w0^3 Lambda / (240 pi^2 m) and the value
/// A w0^3 Lambda / (480 pi^2 m) that order reduction of the local force gives.
/// The phase follows the former.
class RgEnvelope {
 public:
  explicit RgEnvelope(const ReducedParams& params);

  double decay_rate() const { return decay_rate_; }
  double freq_shift_paper() const { return freq_shift_paper_; }
  double freq_shift_reduced() const { return freq_shift_reduced_; }
  double relaxation_time() const { return 1.0 / decay_rate_; }

  double amplitude(double t) const;
  double phase(double t) const;
  double value(double t) const { return amplitude(t) * std::cos(phase(t)); }

  // Renormalization bookkeeping, relative to t0 = 0.
  double a(double tau) const { return decay_rate_ * tau; }
  double b(double tau) const { return freq_shift_paper_ * tau; }
  double z_amplitude(double tau) const { return 1.0 + a(tau); }
  double z_phase(double tau) const { return b(tau); }

 private:
  double amp0_;
  double phase0_;
  double decay_rate_;
  double freq_shift_paper_;
  double freq_shift_reduced_;
};

RgEnvelope rg_envelope(const ReducedParams& params, double max_epsilon = ReducedParams::default_max_epsilon);

/// First-order solution q = q_c + q_hbar with q_c = amp0 cos(t - phase0) and
/// q_hbar the retarded-Green's-function response to the fourth and fifth
/// derivative terms, by cumulative trapezoid quadrature.
Trajectory mean_evolution_perturbative(const ReducedParams& params, const UniformGrid& grid,
                                       double max_epsilon = ReducedParams::default_max_epsilon);

/// Secular growth rates of a perturbative trajectory: q - q_c is fitted to
/// amp0 [c t cos(t - phase0) + s t sin(t - phase0)] plus bounded terms.
/// The decay rate is -c and the frequency shift -s.
struct SecularCoefficients {
  double cos_rate = 0;
  double sin_rate = 0;

  double decay_rate() const { return -cos_rate; }
  double freq_shift() const { return -sin_rate; }
};

SecularCoefficients secular_coefficients(const Trajectory& perturbative);

enum class LangevinMode { Vacuum, ThermalWhite, ThermalOU };

struct LangevinOptions {
  /// false drops the backreaction terms and integrates the bare oscillator
  /// driven by noise, the early-time form used for heating estimates.
  bool dissipation = true;
  GammaMode gamma_mode = GammaMode::FdtConsistent;
};

struct InitialCondition {
  double q = 0;
  double v = 0;
};

/// q'' + gamma q' + omega^2 q = eta / m.
struct OscillatorCoefficients {
  double gamma = 0;
  double omega_sq = 1;
};

/// Vacuum: gamma = 2 Gamma, omega^2 = 1 + A Lambda / (240 pi^2) from order
/// reduction q'''' -> q, q''''' -> q'. Thermal: ohmic gamma, unshifted omega.
OscillatorCoefficients effective_coefficients(const ReducedParams& params, LangevinMode mode,
                                              const LangevinOptions& options = {});

/// Exact propagator of the homogeneous oscillator with Simpson quadrature of
/// the forcing (fourth order; midpoint forcing by cubic interpolation). White
/// noise is held constant over each step and integrated exactly.
Trajectory langevin_integrate(const ReducedParams& params, const NoisePath& noise, InitialCondition ic,
                              LangevinMode mode, const LangevinOptions& options = {});

/// As above; GridMismatch unless the noise lives on `grid`.
Trajectory langevin_integrate(const ReducedParams& params, const UniformGrid& grid, const NoisePath& noise,
                              InitialCondition ic, LangevinMode mode, const LangevinOptions& options = {});

/// Physical-parameter entry point; NegativeRenormalizedMass when the bare
/// mass cannot absorb the cutoff term.
Trajectory langevin_integrate(const PhysicalParams& params, const NoisePath& noise, InitialCondition ic,
                              LangevinMode mode, const LangevinOptions& options = {});

/// Closed-form free oscillator with phase0 and amplitude amp0.
Trajectory harmonic_exact(const ReducedParams& params, const UniformGrid& grid);

/// Nonlinear least squares of q(t) against a e^{-gamma t} cos((1 + delta) t - phi)
/// over the trajectory minus its first `skip_periods` periods.
struct SecularFit {
  double decay_rate = 0;
  double freq_shift = 0;
  double amplitude = 0;
  double phase = 0;
  double decay_rate_se = 0;
  double freq_shift_se = 0;
  int iterations = 0;
};

SecularFit secular_fit(const Trajectory& traj, double skip_periods = 2.0);

}  // namespace mirrorlang
