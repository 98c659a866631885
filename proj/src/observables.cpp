#include "mirrorlang/observables.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace mirrorlang {

namespace {

constexpr double pi = std::numbers::pi;

/// Running mean and central moments per time bin (Welford/Pebay updates).
struct MomentAccumulator {
  Eigen::ArrayXd mean, m2, m3, m4;
  double count = 0;

  explicit MomentAccumulator(Eigen::Index n)
      : mean(Eigen::ArrayXd::Zero(n)), m2(Eigen::ArrayXd::Zero(n)), m3(Eigen::ArrayXd::Zero(n)),
        m4(Eigen::ArrayXd::Zero(n)) {}

  void add(const Eigen::ArrayXd& x) {
    const double n1 = count;
    count += 1.0;
    const double n = count;
    const Eigen::ArrayXd delta = x - mean;
    const Eigen::ArrayXd delta_n = delta / n;
    const Eigen::ArrayXd delta_n2 = delta_n * delta_n;
    const Eigen::ArrayXd term1 = delta * delta_n * n1;
    mean += delta_n;
    m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2 - 4.0 * delta_n * m3;
    m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2;
    m2 += term1;
  }

  Eigen::ArrayXd variance() const { return count > 1 ? Eigen::ArrayXd(m2 / (count - 1.0)) : Eigen::ArrayXd::Zero(mean.size()); }

  /// Standard error of the unbiased variance estimator.
  Eigen::ArrayXd variance_se() const {
    if (count < 4) return Eigen::ArrayXd::Zero(mean.size());
    const Eigen::ArrayXd var = variance();
    const Eigen::ArrayXd fourth = m4 / count;
    const Eigen::ArrayXd v = (fourth - var * var * (count - 3.0) / (count - 1.0)) / count;
    return v.max(0.0).sqrt();
  }
};

struct WindowIndices {
  Eigen::Index first = 0;
  Eigen::Index count = 0;
};

WindowIndices window_indices(const UniformGrid& grid, TimeWindow w) {
  if (!(w.end > w.begin)) throw Error(ErrorCode::WindowTooShort, "window end must exceed its begin");
  const auto first = static_cast<Eigen::Index>(std::ceil((w.begin - grid.start) / grid.step - 1e-9));
  const auto last = static_cast<Eigen::Index>(std::floor((w.end - grid.start) / grid.step + 1e-9));
  if (first < 0 || last >= grid.size) throw Error(ErrorCode::WindowTooShort, "window extends beyond the grid");
  return {first, last - first + 1};
}

struct LineFit {
  double slope;
  double intercept;
};

LineFit weighted_line(const Eigen::ArrayXd& t, const Eigen::ArrayXd& y, const Eigen::ArrayXd& w) {
  const double sw = w.sum();
  const double mt = (w * t).sum() / sw;
  const double my = (w * y).sum() / sw;
  const double stt = (w * (t - mt) * (t - mt)).sum();
  const double sty = (w * (t - mt) * (y - my)).sum();
  const double slope = sty / stt;
  return {slope, my - slope * mt};
}

double thermal_gamma_reduced(const ReducedParams& params, GammaMode mode) {
  return gamma_thermal(coupling(params), mode);
}

}  // namespace

NoiseSpec ensemble_noise_spec(const EnsembleConfig& config) {
  switch (config.mode) {
    case LangevinMode::Vacuum: {
      auto spec = vacuum_noise(config.params);
      spec.oversampling = config.vacuum_oversampling;
      return spec;
    }
    case LangevinMode::ThermalWhite: return thermal_white_noise(config.params);
    case LangevinMode::ThermalOU: return thermal_ou_noise(config.params);
  }
  return Prescribed{};
}

EnsembleStats ensemble_run(const EnsembleConfig& config) {
  if (config.n_paths < 2) throw Error(ErrorCode::InvalidParams, "an ensemble needs at least 2 paths");
  config.params.validate();
  config.grid.validate();
  const NoiseSpec spec = config.zero_noise ? NoiseSpec{Prescribed{}} : ensemble_noise_spec(config);

  const Eigen::Index n_time = config.grid.size;
  const Eigen::Index n_batches = std::clamp<Eigen::Index>(config.n_batches, 1, config.n_paths);
  const int threads = config.threads > 0 ? config.threads
                                         : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));

  MomentAccumulator q_acc(n_time), v_acc(n_time);
  std::vector<MomentAccumulator> batch_acc(static_cast<std::size_t>(n_batches), MomentAccumulator(n_time));

  const Eigen::Index chunk = std::max<Eigen::Index>(64, 16 * threads);
  std::vector<Trajectory> slots(static_cast<std::size_t>(chunk));

  const auto simulate = [&](Eigen::Index path) {
    const NoisePath noise = config.zero_noise
                                ? NoisePath::zero(config.grid)
                                : synthesize(spec, config.grid, derive_seed(config.seed, static_cast<std::uint64_t>(path)));
    return langevin_integrate(config.params, config.grid, noise, config.ic, config.mode, config.options);
  };

  for (Eigen::Index base = 0; base < config.n_paths; base += chunk) {
    const Eigen::Index count = std::min(chunk, config.n_paths - base);
    if (threads == 1) {
      for (Eigen::Index i = 0; i < count; ++i) slots[static_cast<std::size_t>(i)] = simulate(base + i);
    } else {
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
      std::vector<std::jthread> workers;
      workers.reserve(static_cast<std::size_t>(threads));
      for (int w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
          try {
            for (Eigen::Index i = w; i < count; i += threads) slots[static_cast<std::size_t>(i)] = simulate(base + i);
          } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
          }
        });
      }
      workers.clear();
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (Eigen::Index i = 0; i < count; ++i) {
      const Eigen::Index path = base + i;
      const auto& traj = slots[static_cast<std::size_t>(i)];
      q_acc.add(traj.q.array());
      v_acc.add(traj.v.array());
      batch_acc[static_cast<std::size_t>(path * n_batches / config.n_paths)].add(traj.v.array());
    }
  }

  EnsembleStats stats;
  stats.grid = config.grid;
  stats.mean_q = q_acc.mean.matrix();
  stats.mean_v = v_acc.mean.matrix();
  stats.var_q = q_acc.variance().matrix();
  stats.var_v = v_acc.variance().matrix();
  stats.se_var_v = v_acc.variance_se().matrix();
  stats.batch_var_v.resize(n_batches, n_time);
  for (Eigen::Index b = 0; b < n_batches; ++b)
    stats.batch_var_v.row(b) = batch_acc[static_cast<std::size_t>(b)].variance().matrix().transpose();
  stats.n_paths = config.n_paths;
  stats.master_seed = config.seed;
  return stats;
}

TimeWindow default_heating_window(const ReducedParams& params, LangevinMode mode, GammaMode gamma_mode) {
  const auto regime = mode == LangevinMode::Vacuum ? RelaxationRegime::Vacuum : RelaxationRegime::Thermal;
  return {10.0, 0.1 * relaxation_time(params, regime, gamma_mode)};
}

SlopeEstimate variance_slope(const EnsembleStats& stats, TimeWindow window) {
  const auto idx = window_indices(stats.grid, window);
  if (idx.count < 10) throw Error(ErrorCode::WindowTooShort, "slope window holds fewer than 10 samples");
  Eigen::ArrayXd t(idx.count);
  for (Eigen::Index i = 0; i < idx.count; ++i) t[i] = stats.grid[idx.first + i];
  // Uniform weights: sample-estimated 1/se^2 weights correlate with the values
  // and favour the early transient.
  const Eigen::ArrayXd w = Eigen::ArrayXd::Ones(idx.count);

  const auto all = weighted_line(t, stats.var_v.segment(idx.first, idx.count).array(), w);
  SlopeEstimate est{all.slope, 0.0, all.intercept};

  const Eigen::Index n_batches = stats.batch_var_v.rows();
  if (n_batches >= 2) {
    Eigen::ArrayXd slopes(n_batches);
    for (Eigen::Index b = 0; b < n_batches; ++b)
      slopes[b] = weighted_line(t, stats.batch_var_v.row(b).segment(idx.first, idx.count).transpose().array(), w).slope;
    const double mean = slopes.mean();
    const double var = (slopes - mean).square().sum() / static_cast<double>(n_batches - 1);
    est.se = std::sqrt(var / static_cast<double>(n_batches));
  }
  return est;
}

double relaxation_time(const PhysicalParams& params, RelaxationRegime regime, GammaMode gamma_mode) {
  params.validate();
  if (regime == RelaxationRegime::Vacuum) {
    const double w4 = std::pow(params.omega0, 4);
    return 720.0 * pi * pi * params.mass / (params.area * w4);
  }
  return params.mass / gamma_thermal(coupling(params), gamma_mode);
}

double relaxation_time(const ReducedParams& params, RelaxationRegime regime, GammaMode gamma_mode) {
  if (regime == RelaxationRegime::Vacuum) {
    if (!(params.epsilon > 0)) throw Error(ErrorCode::InvalidParams, "vacuum relaxation needs epsilon > 0");
    return 1.0 / params.decay_rate();
  }
  return 1.0 / thermal_gamma_reduced(params, gamma_mode);
}

double vacuum_heating_rate(const PhysicalParams& params) {
  return params.area * std::pow(params.omega0, 5) / (1440.0 * pi * pi * params.mass * params.mass);
}

double vacuum_heating_rate(const ReducedParams& params) { return params.area() / (1440.0 * pi * pi); }

double thermal_heating_rate(const PhysicalParams& params) {
  return sigma_thermal_white_strength(coupling(params)) / (2.0 * params.mass * params.mass);
}

double thermal_heating_rate(const ReducedParams& params) {
  return 0.5 * sigma_thermal_white_strength(coupling(params));
}

double stationary_velocity_variance(const ReducedParams& params, LangevinMode mode, GammaMode gamma_mode) {
  if (mode == LangevinMode::Vacuum) throw Error(ErrorCode::InvalidParams, "vacuum dynamics has no stationary state");
  LangevinOptions options;
  options.gamma_mode = gamma_mode;
  const auto k = effective_coefficients(params, mode, options);
  if (!(k.gamma > 0)) throw Error(ErrorCode::InvalidParams, "stationary variance needs damping");
  if (mode == LangevinMode::ThermalWhite) return thermal_white_noise(params).strength / (2.0 * k.gamma);

  const auto ou = thermal_ou_noise(params);
  Eigen::Matrix3d a;
  a << 0, 1, 0, -k.omega_sq, -k.gamma, 1, 0, 0, -1.0 / ou.corr_time;
  Eigen::Matrix3d q = Eigen::Matrix3d::Zero();
  q(2, 2) = 2.0 * ou.variance / ou.corr_time;
  // A P + P A^T = -Q as a 9x9 linear system in vec(P).
  const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  Eigen::Matrix<double, 9, 9> big;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) big.block<3, 3>(3 * i, 3 * j) = id(i, j) * a + a(i, j) * id;
  const Eigen::Matrix<double, 9, 1> rhs = -Eigen::Map<const Eigen::Matrix<double, 9, 1>>(q.data());
  const Eigen::Matrix<double, 9, 1> p = big.fullPivLu().solve(rhs);
  return p[4];
}

double max_fluctuation_ratio(const PhysicalParams& params) {
  if (!(params.amplitude0 > 0)) throw Error(ErrorCode::ZeroAmplitude, "fluctuation ratio needs l0 > 0");
  if (!(params.temperature > 0)) throw Error(ErrorCode::ZeroTemperature, "fluctuation ratio needs T > 0");
  return std::sqrt(params.temperature / params.mass) / (params.amplitude0 * params.omega0);
}

double energy_gain_per_cycle(const PhysicalParams& params) {
  return 0.5 * params.mass * vacuum_heating_rate(params) * (2.0 * pi / params.omega0);
}

EquipartitionReport equipartition_check(const EnsembleStats& stats, const ReducedParams& params, TimeWindow window,
                                        GammaMode gamma_mode, double tolerance) {
  const double t_relax = relaxation_time(params, RelaxationRegime::Thermal, gamma_mode);
  if (window.begin < 5.0 * t_relax * (1 - 1e-12))
    throw Error(ErrorCode::NotStationary, "window starts before 5 relaxation times");
  const auto idx = window_indices(stats.grid, window);
  if (idx.count < 4) throw Error(ErrorCode::WindowTooShort, "equipartition window holds fewer than 4 samples");

  const Eigen::Index half = idx.count / 2;
  const Eigen::Index n_batches = stats.batch_var_v.rows();
  const auto window_mean = [&](const Eigen::VectorXd& row, Eigen::Index first, Eigen::Index count) {
    return row.segment(first, count).mean();
  };

  EquipartitionReport report;
  report.tolerance = tolerance;
  const double temperature = params.temperature();
  const double mean_var = window_mean(stats.var_v, idx.first, idx.count);

  if (n_batches >= 2) {
    Eigen::ArrayXd whole(n_batches), drift(n_batches);
    for (Eigen::Index b = 0; b < n_batches; ++b) {
      const Eigen::VectorXd row = stats.batch_var_v.row(b).transpose();
      whole[b] = window_mean(row, idx.first, idx.count);
      drift[b] = window_mean(row, idx.first + half, idx.count - half) - window_mean(row, idx.first, half);
    }
    const double nb = static_cast<double>(n_batches);
    const double whole_se = std::sqrt((whole - whole.mean()).square().sum() / (nb - 1.0) / nb);
    const double drift_mean = drift.mean();
    const double drift_se = std::sqrt((drift - drift_mean).square().sum() / (nb - 1.0) / nb);
    if (std::abs(drift_mean) > 3.0 * drift_se && drift_se > 0)
      throw Error(ErrorCode::NotStationary, "velocity variance drifts across the window");
    report.ratio_se = whole_se / temperature;
  }

  report.ratio = mean_var / temperature;
  if (!(mean_var > 0)) {
    report.pass = false;
    report.reason = "no velocity fluctuations in the window";
    return report;
  }
  report.pass = std::abs(report.ratio - 1.0) <= tolerance;
  if (!report.pass) report.reason = "m<v^2>/k_B T deviates from 1 by more than the tolerance";
  return report;
}

}  // namespace mirrorlang
