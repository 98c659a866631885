#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "mirrorlang/error.hpp"
#include "mirrorlang/params.hpp"

// Fourier convention: chi(w) = \int dt chi(t) e^{+i w t},
// sigma(t) = \int dw/2pi sigma(w) e^{-i w t}.

namespace mirrorlang {

enum class KernelDomain { Time, Frequency };
enum class KernelKind { ChiFF, SigmaFF, SpectralDensity };
enum class GammaMode { FdtConsistent, PaperLiteral };
enum class ThermalSigmaVariant { Leading, Full };

const char* to_string(KernelDomain d) noexcept;
const char* to_string(KernelKind k) noexcept;
const char* to_string(GammaMode m) noexcept;

/// The field-side constants entering the kernels: mirror area, cutoff and
/// temperature. Mass and oscillator frequency never appear in a kernel.
struct FieldCoupling {
  double area = 0;
  double cutoff = 0;
  double temperature = 0;

  double radius() const { return std::sqrt(area / std::numbers::pi); }
  double thermal_time() const;
};

FieldCoupling coupling(const PhysicalParams& params);
FieldCoupling coupling(const ReducedParams& params);

/// A kernel sampled on a uniform grid.
template <typename Scalar>
struct BasicSampledKernel {
  using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

  KernelDomain domain = KernelDomain::Frequency;
  KernelKind kind = KernelKind::ChiFF;
  RealVector grid;
  ComplexVector values;

  Eigen::Index size() const { return grid.size(); }
  RealVector real() const { return values.real(); }
  RealVector imag() const { return values.imag(); }

  /// Throws InvalidGrid on size mismatch or non-uniform spacing.
  void validate() const {
    if (grid.size() != values.size()) throw Error(ErrorCode::InvalidGrid, "grid and values differ in length");
    if (grid.size() < 2) return;
    const Scalar step = grid[1] - grid[0];
    if (!(step > 0)) throw Error(ErrorCode::InvalidGrid, "grid must be strictly increasing");
    for (Eigen::Index i = 1; i < grid.size(); ++i) {
      const Scalar d = grid[i] - grid[i - 1];
      // Spacing tolerance relative to the step, with slack for the rounding
      // of large grid coordinates.
      const Scalar slack = Scalar(1e-12) * step + Scalar(4) * std::numeric_limits<Scalar>::epsilon() *
                                                      std::max(std::abs(grid[i]), std::abs(grid[i - 1]));
      if (std::abs(d - step) > slack) throw Error(ErrorCode::InvalidGrid, "grid spacing is not uniform");
    }
  }
};

using SampledKernel = BasicSampledKernel<double>;

/// Uniform frequency or time axis [min, max] with n points.
Eigen::VectorXd linspace_axis(double min, double max, Eigen::Index n);

/// Sum of weighted delta-function derivatives, weight * d^order/dt^order delta(t - location).
struct DeltaComb {
  struct Entry {
    double location = 0;
    double weight = 0;
    int derivative_order = 0;
  };
  std::vector<Entry> entries;

  double total_weight() const;
};

/// Coefficients of the local vacuum dissipation kernel
/// chi(t) = c2 delta''(t) + c4 delta''''(t) + c5 delta^(5)(t).
struct LocalChiCoeffs {
  double c2 = 0;
  double c4 = 0;
  double c5 = 0;

  DeltaComb as_delta_comb() const;
  /// chi(w) of the local kernel, no cutoff check.
  std::complex<double> frequency_response(double omega) const;
};

// ---------------------------------------------------------------------------
// Free-field Green's functions.

template <typename Scalar>
Scalar green_re_vacuum(Scalar r, Scalar dt) {
  using std::abs;
  const Scalar interval = dt * dt - r * r;
  if (abs(abs(dt) - abs(r)) <= Scalar(1e-12) * std::max(Scalar(1), abs(r)))
    throw Error(ErrorCode::PoleOnLightcone, "|dt| = r");
  return Scalar(-1) / (Scalar(4) * Scalar(std::numbers::pi * std::numbers::pi) * interval);
}

/// Re G at temperature T; T = 0 falls back to the vacuum form.
template <typename Scalar>
Scalar green_re_thermal(Scalar r, Scalar dt, Scalar temperature) {
  using std::abs;
  using std::tanh;
  if (!(r > 0)) throw Error(ErrorCode::ZeroSeparation, "separation must be positive");
  if (abs(abs(dt) - r) <= Scalar(1e-12) * std::max(Scalar(1), r))
    throw Error(ErrorCode::PoleOnLightcone, "|dt| = r");
  if (!(temperature > 0)) return green_re_vacuum(r, dt);
  const Scalar pi = Scalar(std::numbers::pi);
  const Scalar a = pi * temperature;
  const Scalar coth_plus = Scalar(1) / tanh(a * (dt + r));
  const Scalar coth_minus = Scalar(1) / tanh(a * (dt - r));
  return a / (Scalar(8) * pi * pi * r) * (coth_plus - coth_minus);
}

enum class GreenImForm { Symmetric, Retarded };

/// Im G as a delta comb in the time lag. The symmetric (thermal) form has
/// weights +-1/(8 pi^2 r) at dt = -+r; the retarded vacuum form keeps only
/// -1/(8 pi^2 r) at dt = +r.
DeltaComb green_im(double r, GreenImForm form = GreenImForm::Symmetric);

/// Delta-support weights of the Wightman spectral functions g^>(k, w) and
/// g^<(k, w) at w = +k and w = -k.
struct WightmanWeights {
  double greater_at_plus = 0;
  double greater_at_minus = 0;
  double less_at_plus = 0;
  double less_at_minus = 0;
};

/// Bose-Einstein occupation 1 / (e^{k/T} - 1); 0 at T = 0.
double bose_occupation(double k, double temperature);

WightmanWeights g_greater_less(double k, double temperature);

// ---------------------------------------------------------------------------
// Vacuum kernels.

LocalChiCoeffs chi_vacuum_local(const FieldCoupling& c);

/// chi(w) for |w| <= Lambda.
std::complex<double> chi_vacuum_freq(double omega, const FieldCoupling& c);

/// One-sided vacuum spectrum S(w) = A w^5 / (720 pi^2) on [0, Lambda].
double sigma_vacuum_spectrum(double omega, const FieldCoupling& c);

/// Vacuum force autocovariance \int_0^Lambda dw/pi S(w) cos(w dt).
double sigma_vacuum_time(double dt, const FieldCoupling& c);

/// \int_0^cutoff w^5 cos(w dt) dw, closed form with a series for small cutoff*dt.
template <typename Scalar>
Scalar fifth_moment_cosine_integral(Scalar dt, Scalar cutoff) {
  using std::abs;
  using std::cos;
  using std::sin;
  const Scalar a = abs(dt);
  const Scalar x = a * cutoff;
  const Scalar l6 = std::pow(cutoff, 6);
  if (x < Scalar(1.5)) {
    // sum_n (-1)^n x^{2n} / ((2n)! (2n + 6)) times cutoff^6
    Scalar term = Scalar(1);
    Scalar sum = Scalar(0);
    for (int n = 0; n < 40; ++n) {
      const Scalar contrib = term / Scalar(2 * n + 6);
      sum += contrib;
      if (abs(contrib) < std::numeric_limits<Scalar>::epsilon() * abs(sum) * Scalar(1e-2)) break;
      term *= -x * x / Scalar((2 * n + 1) * (2 * n + 2));
    }
    return l6 * sum;
  }
  const Scalar s = sin(x), co = cos(x);
  const Scalar x2 = x * x, x3 = x2 * x, x4 = x2 * x2, x5 = x4 * x;
  const Scalar antider = x5 * s + 5 * x4 * co - 20 * x3 * s - 60 * x2 * co + 120 * x * s + 120 * co;
  return (antider - Scalar(120)) / std::pow(a, 6);
}

// ---------------------------------------------------------------------------
// Thermal kernels (high-temperature regime).

/// Leading thermal force autocovariance (16 l^2 / pi^2 tau_B^6) e^{-4|dt|/tau_B};
/// the Full variant adds the finite-size corrections in l / tau_B.
double sigma_thermal_time(double dt, const FieldCoupling& c,
                          ThermalSigmaVariant variant = ThermalSigmaVariant::Leading);

/// White-noise strength D = 8 pi^2 A T^5.
double sigma_thermal_white_strength(const FieldCoupling& c);

/// The same strength from the exponential kernel's integral, 8 l^2 / (pi^2 tau_B^5).
double white_strength_from_kernel(double radius, double thermal_time);

/// Ohmic damping coefficient: D / 2T (FdtConsistent) or 8 pi^2 A T^4 (PaperLiteral).
double gamma_thermal(const FieldCoupling& c, GammaMode mode = GammaMode::FdtConsistent);

/// Warning text when the thermal white-noise approximation is outside its
/// regime (l and 1/omega0 should both exceed tau_B); nullopt otherwise.
std::optional<std::string> thermal_regime_warning(const FieldCoupling& c, double omega0);

// ---------------------------------------------------------------------------
// Sampling helpers producing SampledKernel on a caller-provided axis.

/// Vacuum chi(w); BeyondCutoff if any |w| > Lambda.
SampledKernel sample_chi_vacuum(const Eigen::VectorXd& omega, const FieldCoupling& c);

/// Two-sided vacuum sigma(w) = A |w|^5 / (720 pi^2); BeyondCutoff if |w| > Lambda.
SampledKernel sample_sigma_vacuum(const Eigen::VectorXd& omega, const FieldCoupling& c);

SampledKernel sample_sigma_vacuum_time(const Eigen::VectorXd& lag, const FieldCoupling& c);

/// Ohmic dissipation kernel of the thermal Langevin equation: Im chi = gamma w.
SampledKernel sample_chi_ohmic(const Eigen::VectorXd& omega, double gamma);

/// sigma(w) = gamma w coth(w / 2T), the ohmic partner of sample_chi_ohmic.
SampledKernel sample_sigma_ohmic_thermal(const Eigen::VectorXd& omega, double gamma, double temperature);

/// Constant white-noise spectrum sigma(w) = D.
SampledKernel sample_sigma_white(const Eigen::VectorXd& omega, double strength);

SampledKernel sample_sigma_thermal_time(const Eigen::VectorXd& lag, const FieldCoupling& c,
                                        ThermalSigmaVariant variant = ThermalSigmaVariant::Leading);

/// Fourier transform of the leading exponential kernel: 2 s0 tau / (1 + w^2 tau^2)
/// with s0 the zero-lag value and tau = tau_B / 4.
SampledKernel sample_sigma_thermal_freq(const Eigen::VectorXd& omega, const FieldCoupling& c);

}  // namespace mirrorlang
