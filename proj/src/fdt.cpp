#include "mirrorlang/fdt.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace mirrorlang {

namespace {

void require_frequency(const SampledKernel& k, KernelKind kind, const char* what) {
  if (k.domain != KernelDomain::Frequency || k.kind != kind)
    throw Error(ErrorCode::DomainMismatch, std::string(what) + " must be a frequency-domain " + to_string(kind) +
                                               " kernel");
}

void require_same_grid(const SampledKernel& a, const SampledKernel& b) {
  if (a.grid.size() != b.grid.size() || a.grid != b.grid)
    throw Error(ErrorCode::GridMismatch, "sigma and chi are sampled on different grids");
}

void require_temperature(double t) {
  if (!(t > 0)) throw Error(ErrorCode::ZeroTemperature, "FDT check needs T > 0");
}

/// Shared driver: predicted sigma from Im chi, relative error against sigma.
FdtReport compare(FdtRegime regime, const SampledKernel& sigma, const SampledKernel& chi, double tol,
                  const FdtOptions& options, bool skip_origin,
                  const std::function<double(double, double)>& predict_sigma) {
  require_frequency(sigma, KernelKind::SigmaFF, "sigma");
  require_frequency(chi, KernelKind::ChiFF, "chi");
  require_same_grid(sigma, chi);

  const double band = skip_origin ? options.excluded_band * sigma.grid.cwiseAbs().maxCoeff() : -1.0;
  std::vector<double> kept;
  kept.reserve(static_cast<std::size_t>(sigma.size()));
  double worst = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double w = sigma.grid[i];
    if (skip_origin && std::abs(w) <= band) continue;
    kept.push_back(w);
    const double s = sigma.values[i].real();
    const double predicted = predict_sigma(w, chi.values[i].imag());
    const double denom = std::max(std::abs(s), options.floor);
    const double diff = std::abs(s - predicted);
    worst = std::max(worst, diff == 0.0 ? 0.0 : diff / denom);
  }
  FdtReport r;
  r.regime = regime;
  r.grid = Eigen::Map<const Eigen::VectorXd>(kept.data(), static_cast<Eigen::Index>(kept.size()));
  r.max_rel_error = worst;
  r.tolerance = tol;
  r.pass = worst <= tol;
  return r;
}

}  // namespace

const char* to_string(FdtRegime r) noexcept {
  switch (r) {
    case FdtRegime::Thermal: return "thermal";
    case FdtRegime::Vacuum: return "vacuum";
    case FdtRegime::HighT: return "highT";
    case FdtRegime::Classical: return "classical";
  }
  return "unknown";
}

SampledKernel spectral_density(const SampledKernel& chi) {
  require_frequency(chi, KernelKind::ChiFF, "chi");
  SampledKernel rho = chi;
  rho.kind = KernelKind::SpectralDensity;
  rho.values = (-2.0 * chi.imag()).cast<std::complex<double>>();
  return rho;
}

SampledKernel chi_from_sigma_thermal(const SampledKernel& sigma, double temperature) {
  require_frequency(sigma, KernelKind::SigmaFF, "sigma");
  require_temperature(temperature);
  SampledKernel chi = sigma;
  chi.kind = KernelKind::ChiFF;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    chi.values[i] = {0.0, sigma.values[i].real() * std::tanh(sigma.grid[i] / (2.0 * temperature))};
  return chi;
}

SampledKernel sigma_from_spectral_density(const SampledKernel& rho, double temperature) {
  require_frequency(rho, KernelKind::SpectralDensity, "rho");
  require_temperature(temperature);
  SampledKernel sigma = rho;
  sigma.kind = KernelKind::SigmaFF;
  for (Eigen::Index i = 0; i < rho.size(); ++i)
    sigma.values[i] = -0.5 * rho.values[i].real() / std::tanh(rho.grid[i] / (2.0 * temperature));
  return sigma;
}

FdtReport check_fdt_thermal(const SampledKernel& sigma, const SampledKernel& chi, double temperature, double tol,
                            const FdtOptions& options) {
  require_temperature(temperature);
  return compare(FdtRegime::Thermal, sigma, chi, tol, options, true, [temperature](double w, double im_chi) {
    return im_chi / std::tanh(w / (2.0 * temperature));
  });
}

FdtReport check_fdt_vacuum(const SampledKernel& sigma, const SampledKernel& chi, double tol,
                           const FdtOptions& options) {
  return compare(FdtRegime::Vacuum, sigma, chi, tol, options, false, [](double w, double im_chi) {
    return w > 0 ? im_chi : (w < 0 ? -im_chi : 0.0);
  });
}

FdtReport check_fdt_highT(const SampledKernel& sigma, const SampledKernel& chi, double temperature, double tol,
                          const FdtOptions& options) {
  require_temperature(temperature);
  return compare(FdtRegime::HighT, sigma, chi, tol, options, true,
                 [temperature](double w, double im_chi) { return 2.0 * temperature * im_chi / w; });
}

FdtReport check_fdt_classical(double noise_strength, double gamma, double temperature, double tol) {
  require_temperature(temperature);
  const double predicted = 2.0 * gamma * temperature;
  const double diff = std::abs(noise_strength - predicted);
  FdtReport r;
  r.regime = FdtRegime::Classical;
  r.max_rel_error = diff == 0.0 ? 0.0 : diff / std::max(std::abs(noise_strength), 1e-30);
  r.tolerance = tol;
  r.pass = r.max_rel_error <= tol;
  return r;
}

}  // namespace mirrorlang
