#pragma once

#include <Eigen/Core>

#include "mirrorlang/kernels.hpp"

namespace mirrorlang {

enum class FdtRegime { Thermal, Vacuum, HighT, Classical };

const char* to_string(FdtRegime r) noexcept;

struct FdtReport {
  FdtRegime regime = FdtRegime::Thermal;
  Eigen::VectorXd grid;  // frequencies actually checked
  double max_rel_error = 0;
  bool pass = false;
  double tolerance = 0;
};

struct FdtOptions {
  /// Points with |w| below this fraction of max |w| are skipped where the
  /// FDT kernel is singular (thermal and high-T forms).
  double excluded_band = 1e-6;
  /// Absolute floor of the relative-error denominator.
  double floor = 1e-30;
};

/// rho(w) = -2 Im chi(w).
SampledKernel spectral_density(const SampledKernel& chi);

/// Im chi(w) = sigma(w) tanh(w / 2T), the inverse of the thermal FDT.
SampledKernel chi_from_sigma_thermal(const SampledKernel& sigma, double temperature);

/// sigma(w) = -rho(w) coth(w / 2T) / 2.
SampledKernel sigma_from_spectral_density(const SampledKernel& rho, double temperature);

/// sigma(w) = Im chi(w) coth(w / 2T).
FdtReport check_fdt_thermal(const SampledKernel& sigma, const SampledKernel& chi, double temperature,
                            double tol, const FdtOptions& options = {});

/// sigma(w) = Im chi(w) sign(w).
FdtReport check_fdt_vacuum(const SampledKernel& sigma, const SampledKernel& chi, double tol,
                           const FdtOptions& options = {});

/// Im chi(w) = (w / 2T) sigma(w).
FdtReport check_fdt_highT(const SampledKernel& sigma, const SampledKernel& chi, double temperature, double tol,
                          const FdtOptions& options = {});

/// Classical white-noise form: noise strength D = 2 gamma k_B T.
FdtReport check_fdt_classical(double noise_strength, double gamma, double temperature, double tol);

}  // namespace mirrorlang
