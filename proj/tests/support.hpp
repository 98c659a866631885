#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library's numerics.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>

namespace oracle {

constexpr double pi = std::numbers::pi;

/// Hand-rolled generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Composite 10-point Gauss-Legendre quadrature on [a, b] with `panels` panels.
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels = 200) {
  static constexpr std::array<double, 5> x{0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                           0.8650633666889845, 0.9739065285171717};
  static constexpr std::array<double, 5> w{0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                           0.1494513491505806, 0.0666713443086881};
  const double h = (b - a) / panels;
  double sum = 0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (int i = 0; i < 5; ++i) sum += w[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
  }
  return sum * 0.5 * h;
}

/// q'' + g q' + w2 q = F cos(W t), q(0) = q0, q'(0) = v0, underdamped (g^2 < 4 w2).
struct ForcedOscillator {
  double g, w2, F, W, q0, v0;

  double amp_c() const { return F * (w2 - W * W) / ((w2 - W * W) * (w2 - W * W) + g * g * W * W); }
  double amp_s() const { return F * g * W / ((w2 - W * W) * (w2 - W * W) + g * g * W * W); }
  double wd() const { return std::sqrt(w2 - 0.25 * g * g); }

  double q(double t) const {
    const double pc = amp_c(), ps = amp_s();
    const double a = q0 - pc;
    const double b = (v0 - ps * W + 0.5 * g * a) / wd();
    return std::exp(-0.5 * g * t) * (a * std::cos(wd() * t) + b * std::sin(wd() * t)) + pc * std::cos(W * t) +
           ps * std::sin(W * t);
  }
  double v(double t) const {
    const double pc = amp_c(), ps = amp_s();
    const double a = q0 - pc;
    const double b = (v0 - ps * W + 0.5 * g * a) / wd();
    const double e = std::exp(-0.5 * g * t), c = std::cos(wd() * t), s = std::sin(wd() * t);
    return e * (-0.5 * g * (a * c + b * s) + wd() * (-a * s + b * c)) - pc * W * std::sin(W * t) +
           ps * W * std::cos(W * t);
  }
};

/// First-order displacement q_c + q_hbar for the local vacuum force, in the
/// gauge w0 = m = 1, obtained by integrating the retarded Green's function
/// sin(t - s) against the source by hand:
///   \int_0^t sin(t-s) cos(s-p) ds = t sin(t-p)/2 + sin t sin p / 2
///   \int_0^t sin(t-s) sin(s-p) ds = sin t cos p / 2 - t cos(t-p)/2
inline double perturbative_q(double t, double eps, double lambda, double amp, double p) {
  const double ic = 0.5 * t * std::sin(t - p) + 0.5 * std::sin(t) * std::sin(p);
  const double is = 0.5 * std::sin(t) * std::cos(p) - 0.5 * t * std::cos(t - p);
  return amp * std::cos(t - p) - 30.0 * eps * amp * (lambda / 10.0 * ic - is / 15.0);
}

/// SI constants (CODATA 2018, exact where defined).
namespace si {
constexpr double hbar = 1.054571817e-34;     // J s
constexpr double c = 299792458.0;            // m / s
constexpr double kB = 1.380649e-23;          // J / K
constexpr double e = 1.602176634e-19;        // J / eV
constexpr double keV = 1e3 * e;              // J

/// Paper-literal thermal damping 8 pi^2 c A (k_B T / hbar c)^3 (k_B T / c^2), kg / s.
inline double gamma_paper_literal(double area_m2, double kT_J) {
  const double k = kT_J / (hbar * c);
  return 8.0 * pi * pi * c * area_m2 * k * k * k * (kT_J / (c * c));
}

/// (c / (l0 w0)) sqrt(k_B T / m c^2)
inline double max_fluctuation_ratio(double l0_m, double omega0, double mass_kg, double kT_J) {
  return c / (l0_m * omega0) * std::sqrt(kT_J / (mass_kg * c * c));
}

/// |Delta m_T / m| = A (k_B T)^3 / ((hbar c)^2 m c^2)
inline double thermal_mass_shift_ratio(double area_m2, double mass_kg, double kT_J) {
  return area_m2 * kT_J * kT_J * kT_J / ((hbar * c) * (hbar * c) * mass_kg * c * c);
}

/// 1 / Gamma with Gamma = A hbar w0^4 / (720 pi^2 m c^4), seconds.
inline double vacuum_relaxation_time(double area_m2, double mass_kg, double omega0) {
  return 720.0 * pi * pi * mass_kg * c * c * c * c / (area_m2 * hbar * std::pow(omega0, 4));
}
}  // namespace si

}  // namespace oracle
