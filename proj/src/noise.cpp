#include "mirrorlang/noise.hpp"

#include <unsupported/Eigen/FFT>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace mirrorlang {

namespace {

constexpr double pi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Eigen::VectorXd synthesize_vacuum(const VacuumColored& spec, const UniformGrid& grid, std::mt19937_64& rng) {
  const double dt = grid.step;
  if (spec.cutoff > pi / dt * (1 + 1e-12))
    throw Error(ErrorCode::NyquistViolation, "cutoff " + std::to_string(spec.cutoff) +
                                                 " exceeds the grid Nyquist frequency " + std::to_string(pi / dt));
  const auto n = grid.size;
  const auto fft_size = static_cast<Eigen::Index>(
      std::bit_ceil(static_cast<std::uint64_t>(std::ceil(spec.oversampling * static_cast<double>(n)))));
  const double dw = 2.0 * pi / (static_cast<double>(fft_size) * dt);
  const auto modes = static_cast<Eigen::Index>(std::floor(spec.cutoff / dw * (1 + 1e-12)));
  if (modes < 1) throw Error(ErrorCode::InvalidGrid, "cutoff is below the frequency resolution");

  // Mode k at w_k = k dw carries the exact spectral power of its cell; the
  // first cell starts at 0 and the last ends at the cutoff.
  std::normal_distribution<double> normal;
  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(fft_size));
  const double coef = spec.area_coeff / pi / 6.0;
  for (Eigen::Index k = 1; k <= modes; ++k) {
    const double lo = k == 1 ? 0.0 : (static_cast<double>(k) - 0.5) * dw;
    const double hi = k == modes ? spec.cutoff : (static_cast<double>(k) + 0.5) * dw;
    const double power = coef * (std::pow(hi, 6) - std::pow(lo, 6));
    const double a = normal(rng);
    const double b = normal(rng);
    const double phase = static_cast<double>(k) * dw * grid.start;
    spectrum[static_cast<std::size_t>(k)] =
        std::sqrt(power) * std::complex<double>(a, -b) * std::polar(1.0, phase);
  }

  thread_local Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<std::complex<double>> time;
  fft.inv(time, spectrum);
  Eigen::VectorXd values(n);
  for (Eigen::Index j = 0; j < n; ++j) values[j] = time[static_cast<std::size_t>(j)].real();
  return values;
}

Eigen::VectorXd synthesize_ou(const ThermalOU& spec, const UniformGrid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const double rho = std::exp(-grid.step / spec.corr_time);
  // 1 - rho^2 via expm1 keeps the innovation variance accurate for dt << corr_time.
  const double innovation = std::sqrt(spec.variance * -std::expm1(-2.0 * grid.step / spec.corr_time));
  Eigen::VectorXd values(grid.size);
  values[0] = std::sqrt(spec.variance) * normal(rng);
  for (Eigen::Index j = 1; j < grid.size; ++j) values[j] = rho * values[j - 1] + innovation * normal(rng);
  return values;
}

Eigen::VectorXd synthesize_white(const White& spec, const UniformGrid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const double scale = std::sqrt(spec.strength / grid.step);
  Eigen::VectorXd values(grid.size);
  for (Eigen::Index j = 0; j < grid.size; ++j) values[j] = scale * normal(rng);
  return values;
}

}  // namespace

void validate(const NoiseSpec& spec) {
  std::visit(overloaded{
                 [](const VacuumColored& s) {
                   if (!(s.cutoff > 0)) throw Error(ErrorCode::InvalidParams, "vacuum noise cutoff must be positive");
                   if (!(s.area_coeff >= 0)) throw Error(ErrorCode::InvalidParams, "area coefficient must be >= 0");
                   if (!(s.oversampling >= 1)) throw Error(ErrorCode::InvalidParams, "oversampling must be >= 1");
                 },
                 [](const ThermalOU& s) {
                   if (!(s.corr_time > 0)) throw Error(ErrorCode::InvalidParams, "correlation time must be positive");
                   if (!(s.variance >= 0)) throw Error(ErrorCode::InvalidParams, "variance must be >= 0");
                 },
                 [](const White& s) {
                   if (!(s.strength >= 0)) throw Error(ErrorCode::InvalidParams, "white strength must be >= 0");
                 },
                 [](const Prescribed&) {},
             },
             spec);
}

VacuumColored vacuum_noise(const ReducedParams& params) {
  return {params.area() / (720.0 * pi * pi), params.cutoff(), 4.0};
}

ThermalOU thermal_ou_noise(const ReducedParams& params) {
  const auto c = coupling(params);
  return {c.thermal_time() / 4.0, sigma_thermal_time(0.0, c)};
}

White thermal_white_noise(const ReducedParams& params) { return {sigma_thermal_white_strength(coupling(params))}; }

double target_autocovariance(const NoiseSpec& spec, double lag, double dt) {
  return std::visit(overloaded{
                        [&](const VacuumColored& s) {
                          return s.area_coeff / pi * fifth_moment_cosine_integral(lag, s.cutoff);
                        },
                        [&](const ThermalOU& s) { return s.variance * std::exp(-std::abs(lag) / s.corr_time); },
                        [&](const White& s) { return std::abs(lag) < 0.5 * dt ? s.strength / dt : 0.0; },
                        [](const Prescribed&) -> double {
                          throw Error(ErrorCode::InvalidParams, "prescribed forcing has no covariance law");
                        },
                    },
                    spec);
}

double correlation_time(const NoiseSpec& spec, double dt) {
  return std::visit(overloaded{
                        [](const VacuumColored& s) { return 1.0 / s.cutoff; },
                        [](const ThermalOU& s) { return s.corr_time; },
                        [&](const White&) { return dt; },
                        [&](const Prescribed&) { return dt; },
                    },
                    spec);
}

NoisePath NoisePath::zero(const UniformGrid& grid) {
  return prescribed(grid, Eigen::VectorXd::Zero(grid.size));
}

NoisePath NoisePath::prescribed(const UniformGrid& grid, Eigen::VectorXd values) {
  grid.validate();
  if (values.size() != grid.size) throw Error(ErrorCode::GridMismatch, "forcing length differs from the grid");
  return NoisePath{grid, std::move(values), 0, Prescribed{}};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

NoisePath synthesize(const NoiseSpec& spec, const UniformGrid& grid, std::uint64_t seed) {
  if (grid.size < 2) throw Error(ErrorCode::EmptyGrid, "noise grid needs at least 2 points");
  grid.validate();
  validate(spec);
  std::mt19937_64 rng(seed);
  Eigen::VectorXd values = std::visit(
      overloaded{
          [&](const VacuumColored& s) { return synthesize_vacuum(s, grid, rng); },
          [&](const ThermalOU& s) { return synthesize_ou(s, grid, rng); },
          [&](const White& s) { return synthesize_white(s, grid, rng); },
          [](const Prescribed&) -> Eigen::VectorXd {
            throw Error(ErrorCode::InvalidParams, "prescribed forcing cannot be synthesized");
          },
      },
      spec);
  return NoisePath{grid, std::move(values), seed, spec};
}

AutocovarianceAccumulator::AutocovarianceAccumulator(const UniformGrid& grid, Eigen::Index max_lag)
    : grid_(grid), max_lag_(max_lag), mean_(Eigen::VectorXd::Zero(max_lag + 1)), m2_(Eigen::VectorXd::Zero(max_lag + 1)) {
  if (max_lag < 0 || max_lag >= grid.size) throw Error(ErrorCode::InvalidGrid, "max_lag must lie inside the grid");
}

void AutocovarianceAccumulator::add(const NoisePath& path) {
  if (!(path.grid == grid_)) throw Error(ErrorCode::GridMismatch, "path grid differs from the estimator grid");
  const auto n = grid_.size;
  const Eigen::VectorXd& x = path.values;
  ++count_;
  const double inv_count = 1.0 / static_cast<double>(count_);
  for (Eigen::Index lag = 0; lag <= max_lag_; ++lag) {
    const Eigen::Index m = n - lag;
    const double c = x.head(m).dot(x.segment(lag, m)) / static_cast<double>(m);
    const double delta = c - mean_[lag];
    mean_[lag] += delta * inv_count;
    m2_[lag] += delta * (c - mean_[lag]);
  }
}

AutocovarianceEstimate AutocovarianceAccumulator::result() const {
  if (count_ < 2) throw Error(ErrorCode::InvalidParams, "autocovariance needs at least 2 paths");
  AutocovarianceEstimate est;
  est.kernel.domain = KernelDomain::Time;
  est.kernel.kind = KernelKind::SigmaFF;
  est.kernel.grid.resize(max_lag_ + 1);
  for (Eigen::Index lag = 0; lag <= max_lag_; ++lag) est.kernel.grid[lag] = static_cast<double>(lag) * grid_.step;
  est.kernel.values = mean_.cast<std::complex<double>>();
  const double n = static_cast<double>(count_);
  est.standard_error = (m2_ / (n - 1.0) / n).cwiseMax(0.0).cwiseSqrt();
  est.n_paths = count_;
  return est;
}

AutocovarianceEstimate autocovariance_estimate(std::span<const NoisePath> paths, Eigen::Index max_lag) {
  if (paths.size() < 2) throw Error(ErrorCode::InvalidParams, "autocovariance needs at least 2 paths");
  AutocovarianceAccumulator acc(paths.front().grid, max_lag);
  for (const auto& p : paths) acc.add(p);
  return acc.result();
}

}  // namespace mirrorlang
