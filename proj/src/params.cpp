#include "mirrorlang/params.hpp"

#include <cmath>
#include <string>

#include "mirrorlang/error.hpp"

namespace mirrorlang {

namespace {

constexpr double pi = std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParams, what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0; }

}  // namespace

PhysicalParams PhysicalParams::make(double mass, double area, double omega0, double cutoff,
                                    double temperature, double amplitude0, double theta0) {
  PhysicalParams p;
  p.mass = mass;
  p.area = area;
  p.radius = area > 0 ? std::sqrt(area / pi) : 0.0;
  p.omega0 = omega0;
  p.cutoff = cutoff;
  p.temperature = temperature;
  p.amplitude0 = amplitude0 < 0 && omega0 > 0 ? 1e-3 / omega0 : amplitude0;
  p.theta0 = theta0;
  p.validate();
  return p;
}

PhysicalParams PhysicalParams::from_si(double m_kg, double area_cm2, double omega0_per_s,
                                       double lambda_ratio, double T_keV, double l0_cm,
                                       double theta0_s) {
  const double omega0 = SiConversion::frequency_from_per_second(omega0_per_s);
  const double l0 = l0_cm < 0 ? -1.0 : SiConversion::length_from_meters(l0_cm * 1e-2);
  return make(SiConversion::mass_from_kg(m_kg), SiConversion::area_from_m2(area_cm2 * 1e-4), omega0,
              lambda_ratio * omega0, SiConversion::temperature_from_keV(T_keV), l0,
              SiConversion::time_from_seconds(theta0_s));
}

void PhysicalParams::validate() const {
  require(std::isfinite(mass) && mass > 0, "mass must be positive");
  require(std::isfinite(area) && area > 0, "area must be positive");
  require(std::isfinite(omega0) && omega0 > 0, "omega0 must be positive");
  require(std::isfinite(cutoff) && cutoff > 0, "cutoff must be positive");
  require(finite_nonneg(temperature), "temperature must be non-negative");
  require(finite_nonneg(amplitude0), "amplitude must be non-negative");
  require(std::isfinite(theta0), "theta0 must be finite");
  require(std::isfinite(radius) && radius > 0, "radius must be positive");
  require(std::abs(pi * radius * radius - area) <= 1e-12 * area, "area must equal pi * radius^2");
}

double PhysicalParams::thermal_time() const {
  if (!(temperature > 0)) throw Error(ErrorCode::ZeroTemperature, "tau_B needs T > 0");
  return 1.0 / (pi * temperature);
}

void ReducedParams::validate(double max_epsilon) const {
  require(finite_nonneg(epsilon), "epsilon must be finite and non-negative");
  require(finite_nonneg(lambda), "lambda must be finite and non-negative");
  require(finite_nonneg(theta_T), "theta_T must be finite and non-negative");
  require(finite_nonneg(amp0), "amp0 must be finite and non-negative");
  require(std::isfinite(phase0), "phase0 must be finite");
  if (epsilon >= max_epsilon)
    throw Error(ErrorCode::PerturbativityViolation,
                "epsilon = " + std::to_string(epsilon) + " exceeds the perturbative bound " +
                    std::to_string(max_epsilon));
}

double ReducedParams::radius() const { return std::sqrt(area() / pi); }

double ReducedParams::thermal_time() const {
  if (!(theta_T > 0)) throw Error(ErrorCode::ZeroTemperature, "tau_B needs T > 0");
  return 1.0 / (pi * theta_T);
}

ReducedParams reduce(const PhysicalParams& params, double max_epsilon) {
  params.validate();
  ReducedParams r;
  r.epsilon = params.area * params.omega0 * params.omega0 * params.omega0 / (720.0 * pi * pi * params.mass);
  r.lambda = params.cutoff / params.omega0;
  r.theta_T = params.temperature / params.omega0;
  r.amp0 = params.amplitude0 * params.omega0;
  r.phase0 = params.omega0 * params.theta0;
  r.validate(max_epsilon);
  renormalized_mass(params);
  return r;
}

double renormalized_mass(const PhysicalParams& params) {
  const double cube = params.cutoff * params.cutoff * params.cutoff;
  const double m_r = params.mass - params.area / (24.0 * pi * pi) * cube;
  if (!(m_r > 0))
    throw Error(ErrorCode::NegativeRenormalizedMass,
                "m - A Lambda^3 / (24 pi^2) = " + std::to_string(m_r) + " is not positive");
  return m_r;
}

double thermal_mass_shift(const PhysicalParams& params) {
  if (!(params.temperature > 0)) throw Error(ErrorCode::ZeroTemperature, "thermal mass shift needs T > 0");
  const double t = params.temperature;
  return -params.area * t * t * t;
}

}  // namespace mirrorlang
