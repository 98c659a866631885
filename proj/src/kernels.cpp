#include "mirrorlang/kernels.hpp"

#include <sstream>

namespace mirrorlang {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

void require_positive_temperature(const FieldCoupling& c) {
  if (!(c.temperature > 0)) throw Error(ErrorCode::ZeroTemperature, "thermal kernel needs T > 0");
}

double vacuum_spectral_coefficient(const FieldCoupling& c) { return c.area / (720.0 * pi2); }

void check_cutoff(double omega, const FieldCoupling& c) {
  if (std::abs(omega) > c.cutoff * (1 + 1e-14))
    throw Error(ErrorCode::BeyondCutoff, "|omega| = " + std::to_string(std::abs(omega)) +
                                             " exceeds the cutoff " + std::to_string(c.cutoff));
}

SampledKernel make_kernel(KernelDomain domain, KernelKind kind, const Eigen::VectorXd& axis) {
  SampledKernel k;
  k.domain = domain;
  k.kind = kind;
  k.grid = axis;
  k.values = Eigen::VectorXcd::Zero(axis.size());
  return k;
}

}  // namespace

const char* to_string(KernelDomain d) noexcept { return d == KernelDomain::Time ? "time" : "frequency"; }

const char* to_string(KernelKind k) noexcept {
  switch (k) {
    case KernelKind::ChiFF: return "chi";
    case KernelKind::SigmaFF: return "sigma";
    case KernelKind::SpectralDensity: return "rho";
  }
  return "unknown";
}

const char* to_string(GammaMode m) noexcept {
  return m == GammaMode::FdtConsistent ? "fdt-consistent" : "paper-literal";
}

double FieldCoupling::thermal_time() const {
  require_positive_temperature(*this);
  return 1.0 / (pi * temperature);
}

FieldCoupling coupling(const PhysicalParams& params) {
  return {params.area, params.cutoff, params.temperature};
}

FieldCoupling coupling(const ReducedParams& params) {
  return {params.area(), params.cutoff(), params.temperature()};
}

Eigen::VectorXd linspace_axis(double min, double max, Eigen::Index n) {
  if (n < 2) throw Error(ErrorCode::EmptyGrid, "axis needs at least 2 points");
  if (!(max > min)) throw Error(ErrorCode::InvalidGrid, "axis max must exceed min");
  const double step = (max - min) / static_cast<double>(n - 1);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = min + static_cast<double>(i) * step;
  v[n - 1] = max;
  return v;
}

double DeltaComb::total_weight() const {
  double s = 0;
  for (const auto& e : entries) s += e.weight;
  return s;
}

DeltaComb LocalChiCoeffs::as_delta_comb() const {
  return DeltaComb{{{0.0, c2, 2}, {0.0, c4, 4}, {0.0, c5, 5}}};
}

std::complex<double> LocalChiCoeffs::frequency_response(double omega) const {
  // \int delta^(n)(t) e^{i w t} dt = (-i w)^n
  const double w2 = omega * omega;
  const double w4 = w2 * w2;
  return {-c2 * w2 + c4 * w4, (-c5) * w4 * omega};
}

DeltaComb green_im(double r, GreenImForm form) {
  if (!(r > 0)) throw Error(ErrorCode::ZeroSeparation, "separation must be positive");
  const double w = 1.0 / (8.0 * pi2 * r);
  if (form == GreenImForm::Retarded) return DeltaComb{{{r, -w, 0}}};
  return DeltaComb{{{-r, w, 0}, {r, -w, 0}}};
}

double bose_occupation(double k, double temperature) {
  if (!(temperature > 0)) return 0.0;
  return 1.0 / std::expm1(k / temperature);
}

WightmanWeights g_greater_less(double k, double temperature) {
  if (!(k > 0)) throw Error(ErrorCode::InvalidParams, "momentum magnitude must be positive");
  if (!(temperature >= 0)) throw Error(ErrorCode::InvalidParams, "temperature must be non-negative");
  const double n = bose_occupation(k, temperature);
  const double inv = 1.0 / (2.0 * k);
  return {(1.0 + n) * inv, n * inv, n * inv, (1.0 + n) * inv};
}

LocalChiCoeffs chi_vacuum_local(const FieldCoupling& c) {
  if (!(c.area > 0) || !(c.cutoff >= 0) || !std::isfinite(c.area) || !std::isfinite(c.cutoff))
    throw Error(ErrorCode::InvalidParams, "local kernel needs A > 0 and Lambda >= 0");
  const double pref = c.area / (48.0 * pi2);
  // c5 shares its expression with the vacuum noise spectrum so that the
  // vacuum FDT holds bit-for-bit.
  return {pref * c.cutoff * c.cutoff * c.cutoff, -pref * c.cutoff / 10.0, -vacuum_spectral_coefficient(c)};
}

std::complex<double> chi_vacuum_freq(double omega, const FieldCoupling& c) {
  check_cutoff(omega, c);
  return chi_vacuum_local(c).frequency_response(omega);
}

double sigma_vacuum_spectrum(double omega, const FieldCoupling& c) {
  if (omega < 0) throw Error(ErrorCode::InvalidParams, "one-sided spectrum needs omega >= 0");
  check_cutoff(omega, c);
  const double w2 = omega * omega;
  const double w4 = w2 * w2;
  return vacuum_spectral_coefficient(c) * w4 * omega;
}

double sigma_vacuum_time(double dt, const FieldCoupling& c) {
  return vacuum_spectral_coefficient(c) / pi * fifth_moment_cosine_integral(dt, c.cutoff);
}

double sigma_thermal_time(double dt, const FieldCoupling& c, ThermalSigmaVariant variant) {
  const double tau = c.thermal_time();
  const double l = c.radius();
  const double a = std::abs(dt);
  const double pref = 16.0 * l * l / (pi2 * std::pow(tau, 6));
  const double lead = std::exp(-4.0 * a / tau);
  if (variant == ThermalSigmaVariant::Leading) return pref * lead;
  const double x = l / tau;
  const double x3 = x * x * x, x4 = x3 * x;
  const double c0 = 1.0 + 1.0 / (4.0 * x) - 1.0 / (32.0 * x4);
  const double c_minus = 1.0 / (16.0 * x3) - 1.0 / (64.0 * x4);
  const double c_plus = 1.0 / (16.0 * x3) + 1.0 / (64.0 * x4);
  return pref * (c0 * lead - c_minus * std::exp(-4.0 * (a - l) / tau) + c_plus * std::exp(-4.0 * (a + l) / tau));
}

double sigma_thermal_white_strength(const FieldCoupling& c) {
  require_positive_temperature(c);
  const double t = c.temperature;
  return 8.0 * pi2 * c.area * t * t * t * t * t;
}

double white_strength_from_kernel(double radius, double thermal_time) {
  return 8.0 * radius * radius / (pi2 * std::pow(thermal_time, 5));
}

double gamma_thermal(const FieldCoupling& c, GammaMode mode) {
  require_positive_temperature(c);
  const double t = c.temperature;
  const double literal = 8.0 * pi2 * c.area * t * t * t * t;
  return mode == GammaMode::PaperLiteral ? literal : 0.5 * literal;
}

std::optional<std::string> thermal_regime_warning(const FieldCoupling& c, double omega0) {
  const double tau = c.thermal_time();
  const double l = c.radius();
  std::ostringstream os;
  if (l < 10.0 * tau) os << "mirror radius l = " << l << " is not large compared to tau_B = " << tau << "; ";
  if (omega0 * tau > 0.1) os << "oscillation period is not long compared to tau_B = " << tau << "; ";
  if (os.str().empty()) return std::nullopt;
  return "thermal white-noise approximation outside its regime: " + os.str();
}

SampledKernel sample_chi_vacuum(const Eigen::VectorXd& omega, const FieldCoupling& c) {
  auto k = make_kernel(KernelDomain::Frequency, KernelKind::ChiFF, omega);
  for (Eigen::Index i = 0; i < omega.size(); ++i) k.values[i] = chi_vacuum_freq(omega[i], c);
  return k;
}

SampledKernel sample_sigma_vacuum(const Eigen::VectorXd& omega, const FieldCoupling& c) {
  auto k = make_kernel(KernelDomain::Frequency, KernelKind::SigmaFF, omega);
  for (Eigen::Index i = 0; i < omega.size(); ++i) k.values[i] = sigma_vacuum_spectrum(std::abs(omega[i]), c);
  return k;
}

SampledKernel sample_sigma_vacuum_time(const Eigen::VectorXd& lag, const FieldCoupling& c) {
  auto k = make_kernel(KernelDomain::Time, KernelKind::SigmaFF, lag);
  for (Eigen::Index i = 0; i < lag.size(); ++i) k.values[i] = sigma_vacuum_time(lag[i], c);
  return k;
}

SampledKernel sample_chi_ohmic(const Eigen::VectorXd& omega, double gamma) {
  auto k = make_kernel(KernelDomain::Frequency, KernelKind::ChiFF, omega);
  k.values.imag() = gamma * omega;
  return k;
}

SampledKernel sample_sigma_ohmic_thermal(const Eigen::VectorXd& omega, double gamma, double temperature) {
  if (!(temperature > 0)) throw Error(ErrorCode::ZeroTemperature, "ohmic thermal kernel needs T > 0");
  auto k = make_kernel(KernelDomain::Frequency, KernelKind::SigmaFF, omega);
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    const double x = omega[i] / (2.0 * temperature);
    // w coth(w/2T) -> 2T at w = 0
    k.values[i] = x == 0.0 ? 2.0 * gamma * temperature : gamma * omega[i] / std::tanh(x);
  }
  return k;
}

SampledKernel sample_sigma_white(const Eigen::VectorXd& omega, double strength) {
  auto k = make_kernel(KernelDomain::Frequency, KernelKind::SigmaFF, omega);
  k.values.setConstant(strength);
  return k;
}

SampledKernel sample_sigma_thermal_time(const Eigen::VectorXd& lag, const FieldCoupling& c,
                                        ThermalSigmaVariant variant) {
  auto k = make_kernel(KernelDomain::Time, KernelKind::SigmaFF, lag);
  for (Eigen::Index i = 0; i < lag.size(); ++i) k.values[i] = sigma_thermal_time(lag[i], c, variant);
  return k;
}

SampledKernel sample_sigma_thermal_freq(const Eigen::VectorXd& omega, const FieldCoupling& c) {
  const double s0 = sigma_thermal_time(0.0, c);
  const double tau = c.thermal_time() / 4.0;
  auto k = make_kernel(KernelDomain::Frequency, KernelKind::SigmaFF, omega);
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    const double wt = omega[i] * tau;
    k.values[i] = 2.0 * s0 * tau / (1.0 + wt * wt);
  }
  return k;
}

}  // namespace mirrorlang
