#pragma once

#include <numbers>

namespace mirrorlang {

// Natural units hbar = c = k_B = 1 with the electronvolt as the energy unit:
// masses, frequencies and temperatures in eV, lengths and times in 1/eV,
// areas in 1/eV^2.

/// Conversion between SI quantities and natural units.
struct SiConversion {
  static constexpr double hbar_eV_s = 6.582119569e-16;
  static constexpr double hbar_c_eV_m = 1.973269804e-7;
  static constexpr double kg_eV = 5.609588603804452e35;  // (1 kg) c^2 in eV
  static constexpr double kelvin_eV = 8.617333262e-5;    // k_B in eV / K
  static constexpr double keV_eV = 1.0e3;
  static constexpr double speed_of_light = 299792458.0;  // m / s

  static constexpr double time_from_seconds(double s) { return s / hbar_eV_s; }
  static constexpr double time_to_seconds(double t) { return t * hbar_eV_s; }
  static constexpr double length_from_meters(double m) { return m / hbar_c_eV_m; }
  static constexpr double length_to_meters(double l) { return l * hbar_c_eV_m; }
  static constexpr double area_from_m2(double a) { return a / (hbar_c_eV_m * hbar_c_eV_m); }
  static constexpr double area_to_m2(double a) { return a * hbar_c_eV_m * hbar_c_eV_m; }
  static constexpr double mass_from_kg(double kg) { return kg * kg_eV; }
  static constexpr double mass_to_kg(double m) { return m / kg_eV; }
  static constexpr double frequency_from_per_second(double w) { return w * hbar_eV_s; }
  static constexpr double frequency_to_per_second(double w) { return w / hbar_eV_s; }
  static constexpr double temperature_from_keV(double t) { return t * keV_eV; }
  static constexpr double temperature_to_keV(double t) { return t / keV_eV; }
  static constexpr double temperature_from_kelvin(double t) { return t * kelvin_eV; }
  static constexpr double temperature_to_kelvin(double t) { return t / kelvin_eV; }
};

/// Mirror + field constants in natural units.
struct PhysicalParams {
  double mass = 0;        // bare mirror mass m
  double area = 0;        // A = pi l^2
  double radius = 0;      // disk radius l
  double omega0 = 0;      // oscillator angular frequency
  double cutoff = 0;      // UV cutoff Lambda
  double temperature = 0; // k_B T, 0 for vacuum
  double amplitude0 = 0;  // l_0
  double theta0 = 0;      // phase offset (time units)

  /// Builds a parameter set with radius derived from the area. A negative
  /// `amplitude0` selects the default l_0 = 1e-3 / omega0.
  static PhysicalParams make(double mass, double area, double omega0, double cutoff,
                             double temperature = 0, double amplitude0 = -1, double theta0 = 0);

  /// SI inputs: kg, cm^2, 1/s, Lambda/omega0, keV, cm, s.
  static PhysicalParams from_si(double m_kg, double area_cm2, double omega0_per_s, double lambda_ratio,
                                double T_keV, double l0_cm = -1, double theta0_s = 0);

  /// Throws InvalidParams when a basic invariant fails.
  void validate() const;

  /// tau_B = 1 / (pi k_B T).
  double thermal_time() const;

  double beta() const { return 1.0 / temperature; }
};

/// Dimensionless simulation parameters in the gauge omega0 = m = 1.
///
/// In this gauge `m` is the physical (renormalized) mass: the Lambda^3 term
/// of the local kernel is already absorbed, so no positivity condition on a
/// bare mass applies.
struct ReducedParams {
  double epsilon = 0;  // A omega0^3 / (720 pi^2 m)
  double lambda = 0;   // Lambda / omega0
  double theta_T = 0;  // k_B T / (hbar omega0)
  double amp0 = 1e-3;  // l_0 omega0
  double phase0 = 0;   // omega0 theta0

  static constexpr double default_max_epsilon = 0.1;

  void validate(double max_epsilon = default_max_epsilon) const;

  double area() const { return 720.0 * std::numbers::pi * std::numbers::pi * epsilon; }
  double radius() const;
  double cutoff() const { return lambda; }
  double temperature() const { return theta_T; }
  double thermal_time() const;
  /// Vacuum amplitude decay rate Gamma (= epsilon in this gauge).
  double decay_rate() const { return epsilon; }
};

ReducedParams reduce(const PhysicalParams& params, double max_epsilon = ReducedParams::default_max_epsilon);

/// m_R = m - (A / 24 pi^2) Lambda^3.
double renormalized_mass(const PhysicalParams& params);

/// Delta m_T = -A (k_B T)^3, the cutoff-to-temperature substitution in m_R.
double thermal_mass_shift(const PhysicalParams& params);

}  // namespace mirrorlang
