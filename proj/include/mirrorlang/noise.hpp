#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <variant>

#include "mirrorlang/grid.hpp"
#include "mirrorlang/kernels.hpp"

namespace mirrorlang {

/// Vacuum noise with one-sided spectrum S(w) = area_coeff * w^5 on (0, cutoff],
/// covariance \int_0^cutoff dw/pi S(w) cos(w t).
struct VacuumColored {
  double area_coeff = 0;  // A / (720 pi^2)
  double cutoff = 0;
  double oversampling = 4;  // frequency-grid oversampling relative to the time grid
};

/// Exponentially correlated noise, covariance variance * e^{-|t|/corr_time}.
struct ThermalOU {
  double corr_time = 0;
  double variance = 0;
};

/// Delta-correlated noise of strength D; discretized as independent samples
/// of variance D / dt held constant over each step.
struct White {
  double strength = 0;
};

/// Forcing supplied by the caller; never synthesized.
struct Prescribed {};

using NoiseSpec = std::variant<VacuumColored, ThermalOU, White, Prescribed>;

void validate(const NoiseSpec& spec);

/// Noise laws realizing the field kernels for a parameter set.
VacuumColored vacuum_noise(const ReducedParams& params);
ThermalOU thermal_ou_noise(const ReducedParams& params);
White thermal_white_noise(const ReducedParams& params);

/// Exact covariance of the continuous process at `lag`; for White the
/// discrete value D/dt at lag 0 and 0 elsewhere.
double target_autocovariance(const NoiseSpec& spec, double lag, double dt);

/// Decorrelation scale: 1/cutoff, corr_time, or dt for white noise.
double correlation_time(const NoiseSpec& spec, double dt);

struct NoisePath {
  UniformGrid grid;
  Eigen::VectorXd values;
  std::uint64_t seed = 0;
  NoiseSpec spec = Prescribed{};

  static NoisePath zero(const UniformGrid& grid);
  static NoisePath prescribed(const UniformGrid& grid, Eigen::VectorXd values);
};

/// Per-path stream seed; a pure function of (master, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Draws one stationary Gaussian path. Identical (spec, grid, seed) give
/// bit-identical values.
NoisePath synthesize(const NoiseSpec& spec, const UniformGrid& grid, std::uint64_t seed);

/// Batch-mean autocovariance: each path contributes its time-averaged lag
/// products (zero-mean process), paths are averaged with a standard error.
struct AutocovarianceEstimate {
  SampledKernel kernel;  // Time domain, lag grid, real values
  Eigen::VectorXd standard_error;
  Eigen::Index n_paths = 0;
};

/// Streaming form of autocovariance_estimate; add() paths in a fixed order.
class AutocovarianceAccumulator {
 public:
  AutocovarianceAccumulator(const UniformGrid& grid, Eigen::Index max_lag);

  void add(const NoisePath& path);
  Eigen::Index count() const { return count_; }
  AutocovarianceEstimate result() const;

 private:
  UniformGrid grid_;
  Eigen::Index max_lag_;
  Eigen::Index count_ = 0;
  Eigen::VectorXd mean_;
  Eigen::VectorXd m2_;
};

AutocovarianceEstimate autocovariance_estimate(std::span<const NoisePath> paths, Eigen::Index max_lag);

}  // namespace mirrorlang
