#include <doctest.h>

#include "expect.hpp"
#include "mirrorlang/fdt.hpp"
#include "support.hpp"

using namespace mirrorlang;
using oracle::pi;

namespace {

SampledKernel freq_kernel(KernelKind kind, const Eigen::VectorXd& w, const std::function<std::complex<double>(double)>& f) {
  SampledKernel k;
  k.domain = KernelDomain::Frequency;
  k.kind = kind;
  k.grid = w;
  k.values.resize(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) k.values[i] = f(w[i]);
  return k;
}

}  // namespace

TEST_SUITE("fdt") {

TEST_CASE("spectral density is -2 Im chi") {
  const Eigen::VectorXd w = linspace_axis(-1, 1, 21);
  const auto chi = sample_chi_vacuum(w, FieldCoupling{720 * pi * pi, 1, 0});
  const auto rho = spectral_density(chi);
  CHECK(rho.kind == KernelKind::SpectralDensity);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    CHECK(rho.values[i].real() == doctest::Approx(-2 * std::pow(w[i], 5)).epsilon(1e-13).scale(1e-300));
    CHECK(rho.values[i].real() == doctest::Approx(-rho.values[w.size() - 1 - i].real()).epsilon(1e-13).scale(1e-300));
  }
  const auto zero = spectral_density(freq_kernel(KernelKind::ChiFF, w, [](double) { return 0.0; }));
  CHECK(zero.values.cwiseAbs().maxCoeff() == 0.0);
  auto time = chi;
  time.domain = KernelDomain::Time;
  CHECK(code_of([&] { spectral_density(time); }) == ErrorCode::DomainMismatch);
}

TEST_CASE("thermal FDT on a matched ohmic pair") {
  const double gamma = 0.7, t = 0.3;
  const Eigen::VectorXd w = linspace_axis(-5, 5, 10000);
  const auto rep = check_fdt_thermal(sample_sigma_ohmic_thermal(w, gamma, t), sample_chi_ohmic(w, gamma), t, 1e-12);
  CHECK(rep.max_rel_error < 1e-14);
  CHECK(rep.pass);
  CHECK(rep.regime == FdtRegime::Thermal);
  CHECK(rep.grid.cwiseAbs().minCoeff() > 1e-6 * 5);
}

TEST_CASE("thermal FDT detects an injected fault") {
  const double gamma = 0.7, t = 0.3;
  const Eigen::VectorXd w = linspace_axis(-5, 5, 1001);
  auto sigma = sample_sigma_ohmic_thermal(w, gamma, t);
  sigma.values[123] *= 1.01;
  const auto rep = check_fdt_thermal(sigma, sample_chi_ohmic(w, gamma), t, 1e-6);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_rel_error == doctest::Approx(0.01 / 1.01).epsilon(1e-9));
}

TEST_CASE("thermal FDT errors") {
  const Eigen::VectorXd w = linspace_axis(-5, 5, 11), w2 = linspace_axis(-5, 5, 12);
  CHECK(code_of([&] {
          check_fdt_thermal(sample_sigma_white(w, 1), sample_chi_ohmic(w2, 1), 1, 1e-6);
        }) == ErrorCode::GridMismatch);
  CHECK(code_of([&] { check_fdt_thermal(sample_sigma_white(w, 1), sample_chi_ohmic(w, 1), 0, 1e-6); }) ==
        ErrorCode::ZeroTemperature);
}

TEST_CASE("thermal check at high temperature approaches the high-T check") {
  // fixed sigma = D, Im chi = D w / 2T; the coth kernel deviates by O((w/T)^2)
  const Eigen::VectorXd w = linspace_axis(-1, 1, 200);
  for (double t : {10.0, 100.0, 1000.0}) {
    const double d = 2.0;
    const auto sigma = sample_sigma_white(w, d);
    const auto chi = sample_chi_ohmic(w, d / (2 * t));
    const auto th = check_fdt_thermal(sigma, chi, t, 1);
    const auto hi = check_fdt_highT(sigma, chi, t, 1);
    CHECK(hi.max_rel_error < 1e-14);
    CHECK(std::abs(th.max_rel_error - hi.max_rel_error) <= 1.0 / (12 * t * t) * 1.01);
  }
}

TEST_CASE("vacuum FDT on the vacuum pair") {
  const FieldCoupling c{0.9, 3.0, 0};
  const Eigen::VectorXd pos = linspace_axis(3.0 / 10000, 3.0, 10000);
  const auto rep = check_fdt_vacuum(sample_sigma_vacuum(pos, c), sample_chi_vacuum(pos, c), 1e-12);
  CHECK(rep.pass);
  CHECK(rep.max_rel_error == 0.0);
  const Eigen::VectorXd sym = linspace_axis(-3.0, 3.0, 1001);
  CHECK(check_fdt_vacuum(sample_sigma_vacuum(sym, c), sample_chi_vacuum(sym, c), 1e-12).pass);
  // coth -> sign as T -> 0
  CHECK(check_fdt_thermal(sample_sigma_vacuum(pos, c), sample_chi_vacuum(pos, c), 1e-9, 1e-6).pass);
}

TEST_CASE("high-T FDT on the white-noise pair") {
  const FieldCoupling c{2.0, 1.0, 0.8};
  const Eigen::VectorXd w = linspace_axis(-4, 4, 1000);
  const double d = sigma_thermal_white_strength(c);
  const auto consistent = check_fdt_highT(sample_sigma_white(w, d), sample_chi_ohmic(w, gamma_thermal(c)), c.temperature, 1e-12);
  CHECK(consistent.pass);
  const auto literal = check_fdt_highT(sample_sigma_white(w, d),
                                       sample_chi_ohmic(w, gamma_thermal(c, GammaMode::PaperLiteral)), c.temperature,
                                       1e-12);
  CHECK_FALSE(literal.pass);
  CHECK(literal.max_rel_error == doctest::Approx(1.0).epsilon(1e-12));
  const auto zeros = check_fdt_highT(sample_sigma_white(w, 0), sample_chi_ohmic(w, 0), 1.0, 1e-12);
  CHECK(zeros.pass);
  CHECK(zeros.max_rel_error == 0.0);
}

TEST_CASE("classical FDT") {
  const FieldCoupling c{2.0, 1.0, 0.8};
  const double d = sigma_thermal_white_strength(c);
  CHECK(check_fdt_classical(d, gamma_thermal(c), c.temperature, 1e-12).pass);
  CHECK(check_fdt_classical(d, gamma_thermal(c, GammaMode::PaperLiteral), c.temperature, 1e-12).max_rel_error ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property: checks are invariant under common rescaling") {
  oracle::Gen g(31);
  for (int i = 0; i < 50; ++i) {
    const double t = g.log_uniform(0.01, 10), gamma = g.log_uniform(0.01, 10), s = g.log_uniform(1e-6, 1e6);
    const Eigen::VectorXd w = linspace_axis(-3, 3, 64);
    auto sigma = sample_sigma_ohmic_thermal(w, gamma, t);
    sigma.values[g.integer(0, 63)] *= 1.0 + g.uniform(-0.1, 0.1);
    auto chi = sample_chi_ohmic(w, gamma);
    const auto a = check_fdt_thermal(sigma, chi, t, 1e-3);
    sigma.values *= s;
    chi.values *= s;
    const auto b = check_fdt_thermal(sigma, chi, t, 1e-3);
    CHECK(b.max_rel_error == doctest::Approx(a.max_rel_error).epsilon(1e-12));
    CHECK(a.pass == b.pass);
  }
}

TEST_CASE("property: thermal inversion round-trips through rho") {
  oracle::Gen g(32);
  for (int i = 0; i < 50; ++i) {
    const double t = g.log_uniform(0.05, 5);
    const Eigen::VectorXd w = linspace_axis(0.01, 4, 100);
    const auto sigma = freq_kernel(KernelKind::SigmaFF, w, [&](double x) { return std::exp(-x) * (1 + x * x); });
    const auto back = sigma_from_spectral_density(spectral_density(chi_from_sigma_thermal(sigma, t)), t);
    for (Eigen::Index j = 0; j < w.size(); ++j)
      CHECK(back.values[j].real() == doctest::Approx(sigma.values[j].real()).epsilon(1e-12));
  }
}

TEST_CASE("property: thermal check at T -> 0 agrees with the vacuum check") {
  oracle::Gen g(33);
  for (int i = 0; i < 30; ++i) {
    const FieldCoupling c{g.log_uniform(0.1, 10), 2.0, 0};
    const Eigen::VectorXd w = linspace_axis(0.02, 2.0, 100);
    auto sigma = sample_sigma_vacuum(w, c);
    sigma.values[g.integer(0, 99)] *= 1.0 + g.uniform(-0.2, 0.2);
    const auto chi = sample_chi_vacuum(w, c);
    const double t = 1e-5;  // T * grid_max = 2e-5
    const auto th = check_fdt_thermal(sigma, chi, t, 1);
    const auto vac = check_fdt_vacuum(sigma, chi, 1);
    CHECK(std::abs(th.max_rel_error - vac.max_rel_error) < 1e-3);
  }
}

}
