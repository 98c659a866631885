#include "mirrorlang/dynamics.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <vector>

namespace mirrorlang {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double max_perturbative_step = two_pi / 200.0;

bool is_white(const NoisePath& noise) { return std::holds_alternative<White>(noise.spec); }

void check_mode_matches_noise(LangevinMode mode, const NoisePath& noise) {
  if (std::holds_alternative<Prescribed>(noise.spec)) return;
  const bool ok = (mode == LangevinMode::Vacuum && std::holds_alternative<VacuumColored>(noise.spec)) ||
                  (mode == LangevinMode::ThermalWhite && std::holds_alternative<White>(noise.spec)) ||
                  (mode == LangevinMode::ThermalOU && std::holds_alternative<ThermalOU>(noise.spec));
  if (!ok) throw Error(ErrorCode::InvalidParams, "noise law does not match the Langevin mode");
}

/// Midpoint value between samples j and j+1 by four-point Lagrange interpolation.
double midpoint_forcing(const Eigen::VectorXd& f, Eigen::Index j) {
  const Eigen::Index n = f.size();
  if (n < 4) return 0.5 * (f[j] + f[j + 1]);
  if (j == 0) return 0.3125 * f[0] + 0.9375 * f[1] - 0.3125 * f[2] + 0.0625 * f[3];
  if (j == n - 2) return 0.0625 * f[n - 4] - 0.3125 * f[n - 3] + 0.9375 * f[n - 2] + 0.3125 * f[n - 1];
  return (-f[j - 1] + 9.0 * f[j] + 9.0 * f[j + 1] - f[j + 2]) / 16.0;
}

/// State-transition data of x' = L x + B f with x = (q, v), L = [[0, 1], [-w^2, -gamma]], B = (0, 1).
struct Propagator {
  Eigen::Matrix2d full;
  Eigen::Matrix2d half;
  Eigen::Vector2d hold;  // \int_0^h e^{L s} ds B

  Propagator(const OscillatorCoefficients& c, double h) {
    Eigen::Matrix3d aug = Eigen::Matrix3d::Zero();
    aug(0, 1) = 1.0;
    aug(1, 0) = -c.omega_sq;
    aug(1, 1) = -c.gamma;
    aug(1, 2) = 1.0;
    const Eigen::Matrix3d e = (aug * h).exp();
    full = e.topLeftCorner<2, 2>();
    hold = e.topRightCorner<2, 1>();
    half = (aug.topLeftCorner<2, 2>() * (0.5 * h)).exp();
  }
};

}  // namespace

// ---------------------------------------------------------------------------

RgEnvelope::RgEnvelope(const ReducedParams& params)
    : amp0_(params.amp0),
      phase0_(params.phase0),
      decay_rate_(params.epsilon),
      freq_shift_paper_(3.0 * params.epsilon * params.lambda),
      freq_shift_reduced_(1.5 * params.epsilon * params.lambda) {}

double RgEnvelope::amplitude(double t) const { return amp0_ * std::exp(-decay_rate_ * t); }

double RgEnvelope::phase(double t) const {
  const double s = freq_shift_paper_;
  return (1.0 + s) * (t - phase0_ * (1.0 - s));
}

RgEnvelope rg_envelope(const ReducedParams& params, double max_epsilon) {
  params.validate(max_epsilon);
  if (!(params.epsilon > 0)) throw Error(ErrorCode::InvalidParams, "RG envelope needs epsilon > 0");
  return RgEnvelope(params);
}

// ---------------------------------------------------------------------------

Trajectory mean_evolution_perturbative(const ReducedParams& params, const UniformGrid& grid, double max_epsilon) {
  params.validate(max_epsilon);
  grid.validate();
  if (grid.step > max_perturbative_step * (1 + 1e-9))
    throw Error(ErrorCode::StepTooCoarse, "quadrature step must not exceed 2 pi / 200");
  if (params.epsilon > 0 && grid.length() > 5.0 / params.decay_rate() * (1 + 1e-12))
    throw Error(ErrorCode::InvalidGrid, "perturbative span must not exceed 5 relaxation times");

  const Eigen::Index n = grid.size;
  const double amp = params.amp0;
  const double ph = params.phase0;
  const double coupling = 30.0 * params.epsilon;  // A / (24 pi^2 m w0) in this gauge

  Trajectory out;
  out.grid = grid;
  out.params = params;
  out.method = TrajectoryMethod::Perturbative;
  out.q.resize(n);
  out.v.resize(n);

  // q_hbar(t) = -coupling [sin t C(t) - cos t S(t)], v_hbar = -coupling [cos t C + sin t S],
  // C = \int cos(t') f(t') dt', S = \int sin(t') f(t') dt'.
  double c_int = 0, s_int = 0;
  double prev_c = 0, prev_s = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double t = grid[j];
    const double cq = std::cos(t - ph), sq = std::sin(t - ph);
    const double source = amp * (params.lambda / 10.0 * cq - sq / 15.0);
    const double ct = std::cos(t), st = std::sin(t);
    const double fc = ct * source, fs = st * source;
    if (j > 0) {
      c_int += 0.5 * grid.step * (prev_c + fc);
      s_int += 0.5 * grid.step * (prev_s + fs);
    }
    prev_c = fc;
    prev_s = fs;
    out.q[j] = amp * cq - coupling * (st * c_int - ct * s_int);
    out.v[j] = -amp * sq - coupling * (ct * c_int + st * s_int);
  }
  return out;
}

SecularCoefficients secular_coefficients(const Trajectory& traj) {
  const auto& p = traj.params;
  if (!(p.amp0 > 0)) throw Error(ErrorCode::ZeroAmplitude, "secular coefficients need amp0 > 0");
  const Eigen::Index n = traj.grid.size;
  Eigen::MatrixXd basis(n, 4);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double t = traj.grid[j];
    const double c = std::cos(t - p.phase0), s = std::sin(t - p.phase0);
    basis.row(j) << t * c, t * s, c, s;
    rhs[j] = (traj.q[j] - p.amp0 * c) / p.amp0;
  }
  const Eigen::Vector4d coef = basis.colPivHouseholderQr().solve(rhs);
  return {coef[0], coef[1]};
}

// ---------------------------------------------------------------------------

OscillatorCoefficients effective_coefficients(const ReducedParams& params, LangevinMode mode,
                                              const LangevinOptions& options) {
  if (!options.dissipation) return {0.0, 1.0};
  if (mode == LangevinMode::Vacuum) {
    // (A / 24 pi^2)(Lambda/10 q'''' + 1/15 q''''') with q'''' -> q, q''''' -> q'.
    return {2.0 * params.decay_rate(), 1.0 + 3.0 * params.epsilon * params.lambda};
  }
  return {gamma_thermal(coupling(params), options.gamma_mode), 1.0};
}

Trajectory langevin_integrate(const ReducedParams& params, const NoisePath& noise, InitialCondition ic,
                              LangevinMode mode, const LangevinOptions& options) {
  params.validate();
  noise.grid.validate();
  if (noise.values.size() != noise.grid.size) throw Error(ErrorCode::GridMismatch, "noise length differs from its grid");
  check_mode_matches_noise(mode, noise);

  const auto coef = effective_coefficients(params, mode, options);
  const UniformGrid& grid = noise.grid;
  const double h = grid.step;
  const Propagator prop(coef, h);
  const Eigen::Vector2d b(0.0, 1.0);
  const Eigen::Vector2d full_b = prop.full * b;
  const Eigen::Vector2d half_b = prop.half * b;
  const Eigen::VectorXd& f = noise.values;
  const bool white = is_white(noise);

  const bool forced = (f.array() != 0.0).any();
  const double bound = 10.0 * std::max({params.amp0, std::abs(ic.q), std::abs(ic.v)});

  Trajectory out;
  out.grid = grid;
  out.params = params;
  out.method = TrajectoryMethod::ReducedLangevin;
  if (!std::holds_alternative<Prescribed>(noise.spec)) out.seed = noise.seed;
  out.q.resize(grid.size);
  out.v.resize(grid.size);

  Eigen::Vector2d x(ic.q, ic.v);
  out.q[0] = x[0];
  out.v[0] = x[1];
  for (Eigen::Index j = 0; j + 1 < grid.size; ++j) {
    Eigen::Vector2d next = prop.full * x;
    if (white) {
      next += prop.hold * f[j];
    } else if (forced) {
      next += (h / 6.0) * (full_b * f[j] + 4.0 * half_b * midpoint_forcing(f, j) + b * f[j + 1]);
    }
    x = next;
    out.q[j + 1] = x[0];
    out.v[j + 1] = x[1];
    if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || (!forced && std::abs(x[0]) > bound))
      throw Error(ErrorCode::BlowUp, "trajectory left its bound at t = " + std::to_string(grid[j + 1]));
  }
  return out;
}

Trajectory langevin_integrate(const ReducedParams& params, const UniformGrid& grid, const NoisePath& noise,
                              InitialCondition ic, LangevinMode mode, const LangevinOptions& options) {
  if (!(noise.grid == grid)) throw Error(ErrorCode::GridMismatch, "noise grid differs from the output grid");
  return langevin_integrate(params, noise, ic, mode, options);
}

Trajectory langevin_integrate(const PhysicalParams& params, const NoisePath& noise, InitialCondition ic,
                              LangevinMode mode, const LangevinOptions& options) {
  params.validate();
  renormalized_mass(params);
  return langevin_integrate(reduce(params), noise, ic, mode, options);
}

Trajectory harmonic_exact(const ReducedParams& params, const UniformGrid& grid) {
  Trajectory out;
  out.grid = grid;
  out.params = params;
  out.method = TrajectoryMethod::HarmonicExact;
  out.q.resize(grid.size);
  out.v.resize(grid.size);
  for (Eigen::Index j = 0; j < grid.size; ++j) {
    out.q[j] = params.amp0 * std::cos(grid[j] - params.phase0);
    out.v[j] = -params.amp0 * std::sin(grid[j] - params.phase0);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct PeakEstimate {
  double decay_rate;
  double frequency;
};

/// Local maxima of q with parabolic refinement; log-linear decay and mean
/// spacing give the starting point for the nonlinear fit.
PeakEstimate estimate_from_peaks(const Eigen::VectorXd& t, const Eigen::VectorXd& q) {
  std::vector<double> times, logs;
  for (Eigen::Index j = 1; j + 1 < q.size(); ++j) {
    if (q[j] > 0 && q[j] >= q[j - 1] && q[j] > q[j + 1]) {
      const double denom = q[j - 1] - 2.0 * q[j] + q[j + 1];
      const double shift = denom != 0.0 ? 0.5 * (q[j - 1] - q[j + 1]) / denom : 0.0;
      const double h = t[j + 1] - t[j];
      const double peak = q[j] - 0.25 * (q[j - 1] - q[j + 1]) * shift;
      times.push_back(t[j] + shift * h);
      logs.push_back(std::log(peak));
    }
  }
  if (times.size() < 3) throw Error(ErrorCode::FitDiverged, "too few oscillation peaks to fit");
  const auto m = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = times[static_cast<std::size_t>(i)];
    y[i] = logs[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d line = a.colPivHouseholderQr().solve(y);
  const double freq = two_pi * static_cast<double>(m - 1) / (times.back() - times.front());
  return {-line[1], freq};
}

}  // namespace

SecularFit secular_fit(const Trajectory& traj, double skip_periods) {
  if (traj.grid.length() < 20.0 * two_pi) throw Error(ErrorCode::TooShort, "secular fit needs at least 20 periods");
  const double t_begin = traj.grid.start + skip_periods * two_pi;
  const auto first = static_cast<Eigen::Index>(std::ceil((t_begin - traj.grid.start) / traj.grid.step));
  const Eigen::Index n = traj.grid.size - first;
  const Eigen::VectorXd t = traj.grid.values().tail(n);
  const Eigen::VectorXd q = traj.q.tail(n);
  if (!(q.cwiseAbs().maxCoeff() > 0)) throw Error(ErrorCode::FitDiverged, "trajectory is identically zero");

  const auto start = estimate_from_peaks(t, q);
  // Parameters: gamma, delta, c1, c2 with model e^{-gamma t}(c1 cos w t + c2 sin w t), w = 1 + delta.
  Eigen::Vector4d p(start.decay_rate, start.frequency - 1.0, 0.0, 0.0);

  const auto linear_amplitudes = [&](double gamma, double w, Eigen::Index m) {
    Eigen::MatrixXd a(m, 2);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double e = std::exp(-gamma * t[j]);
      a(j, 0) = e * std::cos(w * t[j]);
      a(j, 1) = e * std::sin(w * t[j]);
    }
    return Eigen::Vector2d(a.colPivHouseholderQr().solve(q.head(m)));
  };

  const auto residuals = [&](const Eigen::Vector4d& x, Eigen::Index m, Eigen::MatrixXd* jac) {
    Eigen::VectorXd r(m);
    if (jac) jac->resize(m, 4);
    const double w = 1.0 + x[1];
    for (Eigen::Index j = 0; j < m; ++j) {
      const double e = std::exp(-x[0] * t[j]);
      const double c = std::cos(w * t[j]), s = std::sin(w * t[j]);
      const double model = e * (x[2] * c + x[3] * s);
      r[j] = q[j] - model;
      if (jac) {
        (*jac)(j, 0) = -t[j] * model;
        (*jac)(j, 1) = e * t[j] * (-x[2] * s + x[3] * c);
        (*jac)(j, 2) = e * c;
        (*jac)(j, 3) = e * s;
      }
    }
    return r;
  };

  Eigen::MatrixXd jac;
  double cost = 0;
  int iter = 0;
  // residuals at rounding level: an exact model leaves nothing to descend on
  const double cost_floor = 1e-26 * q.squaredNorm();
  // Levenberg-Marquardt on the first m samples from the current p.
  const auto levenberg_marquardt = [&](Eigen::Index m) {
    Eigen::VectorXd r = residuals(p, m, &jac);
    cost = r.squaredNorm();
    double mu = 1e-3;
    bool converged = false;
    for (int k = 0; k < 200 && !converged; ++k, ++iter) {
      const Eigen::Matrix4d jtj = jac.transpose() * jac;
      const Eigen::Vector4d jtr = jac.transpose() * r;
      bool accepted = false;
      while (!accepted && mu < 1e16) {
        Eigen::Matrix4d lhs = jtj;
        lhs.diagonal() += mu * jtj.diagonal();
        const Eigen::Vector4d step = lhs.ldlt().solve(jtr);
        const Eigen::Vector4d trial = p + step;
        Eigen::MatrixXd trial_jac;
        const Eigen::VectorXd trial_r = residuals(trial, m, &trial_jac);
        const double trial_cost = trial_r.squaredNorm();
        if (std::isfinite(trial_cost) && trial_cost <= cost) {
          const double rel = (step.array() / (p.array().abs() + 1e-12)).abs().maxCoeff();
          converged = rel < 1e-12 || cost - trial_cost <= 1e-15 * cost || trial_cost <= cost_floor;
          p = trial;
          r = trial_r;
          jac = trial_jac;
          cost = trial_cost;
          mu = std::max(mu / 10.0, 1e-12);
          accepted = true;
        } else {
          mu *= 10.0;
        }
      }
      if (!accepted) converged = true;  // no further descent possible from here
    }
    return converged;
  };

  // Window continuation: an O(1/T) frequency error in the starting point
  // becomes an O(1) phase error over a long record, so the window grows from
  // about 20 periods by doubling, each stage starting from the previous fit.
  const double t0 = t[0];
  double span = 20.0 * two_pi;
  bool converged = false;
  while (true) {
    const double t_end = t0 + span;
    Eigen::Index m = n;
    if (t_end < t[n - 1]) m = std::min<Eigen::Index>(n, static_cast<Eigen::Index>((t_end - t0) / traj.grid.step) + 1);
    p.tail<2>() = linear_amplitudes(p[0], 1.0 + p[1], m);
    converged = levenberg_marquardt(m);
    if (m == n || !converged) break;
    span *= 2.0;
  }
  if (!p.allFinite() || !converged) throw Error(ErrorCode::FitDiverged, "Levenberg-Marquardt did not converge");

  SecularFit fit;
  fit.decay_rate = p[0];
  fit.freq_shift = p[1];
  fit.amplitude = std::hypot(p[2], p[3]);
  fit.phase = std::atan2(p[3], p[2]);
  fit.iterations = iter;
  const double dof = static_cast<double>(n - 4);
  const Eigen::Matrix4d cov = (jac.transpose() * jac).inverse() * (cost / dof);
  fit.decay_rate_se = std::sqrt(std::max(cov(0, 0), 0.0));
  fit.freq_shift_se = std::sqrt(std::max(cov(1, 1), 0.0));
  return fit;
}

}  // namespace mirrorlang
