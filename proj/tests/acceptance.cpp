// Acceptance checks: one PASS/FAIL line per criterion.
//   mirrorlang_acceptance [N ...]   runs the listed criteria (default: all)

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>

#include "mirrorlang/config.hpp"
#include "mirrorlang/fdt.hpp"
#include "mirrorlang/io.hpp"
#include "mirrorlang/observables.hpp"
#include "mirrorlang/scenario.hpp"
#include "support.hpp"

using namespace mirrorlang;
using oracle::pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within_factor(double value, double target, double factor) {
  return value > 0 && value <= factor * target && value >= target / factor;
}

// 1. Vacuum FDT on (0, Lambda], 1e4 points, < 1e-12, < 1 s.
Outcome vacuum_fdt() {
  const auto t0 = std::chrono::steady_clock::now();
  const FieldCoupling c{720 * pi * pi * 1e-3, 5.0, 0};
  const Eigen::VectorXd w = linspace_axis(c.cutoff / 1e4, c.cutoff, 10000);
  const auto sigma = sample_sigma_vacuum(w, c);
  const auto chi = sample_chi_vacuum(w, c);
  const auto rep = check_fdt_vacuum(sigma, chi, 1e-12);
  // independent: sigma = A w^5 / (720 pi^2) and Im[(A/48 pi^2)(-1/15)(-i w)^5]
  double oracle_err = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double s = c.area * std::pow(w[i], 5) / (720 * pi * pi);
    const double im = (c.area / (48 * pi * pi)) * (-1.0 / 15) * std::pow(std::complex<double>(0, -w[i]), 5).imag();
    oracle_err = std::max({oracle_err, std::abs(sigma.values[i].real() - s) / s, std::abs(chi.values[i].imag() - im) / s});
  }
  const double secs = seconds_since(t0);
  return {rep.pass && rep.max_rel_error < 1e-12 && oracle_err < 1e-12 && secs < 1.0,
          fmt("max_rel_error %.3g, vs closed form %.3g, %.3f s", rep.max_rel_error, oracle_err, secs)};
}

// 2. Thermal FDT on matched pairs < 1e-12; T = 1e-9 agrees with the vacuum check within 1e-6.
Outcome thermal_fdt() {
  oracle::Gen g(2);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double gamma = g.log_uniform(1e-3, 10), t = g.log_uniform(1e-2, 1e2);
    const Eigen::VectorXd w = linspace_axis(-10 * t, 10 * t, 10000);
    const auto rep = check_fdt_thermal(sample_sigma_ohmic_thermal(w, gamma, t), sample_chi_ohmic(w, gamma), t, 1e-12);
    worst = std::max(worst, rep.max_rel_error);
  }
  const FieldCoupling c{720 * pi * pi * 1e-3, 5.0, 0};
  const Eigen::VectorXd w = linspace_axis(c.cutoff / 1e4, c.cutoff, 10000);
  const auto sigma = sample_sigma_vacuum(w, c);
  const auto chi = sample_chi_vacuum(w, c);
  const auto cold = check_fdt_thermal(sigma, chi, 1e-9, 1e-6);
  const auto vac = check_fdt_vacuum(sigma, chi, 1e-6);
  const double gap = std::abs(cold.max_rel_error - vac.max_rel_error);
  return {worst < 1e-12 && cold.pass && gap < 1e-6,
          fmt("ohmic pairs max_rel_error %.3g; T=1e-9 vs vacuum gap %.3g", worst, gap)};
}

// 3. KMS at both support points, 100 random (k, T), < 1e-14.
Outcome kms() {
  oracle::Gen g(3);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double k = g.log_uniform(1e-3, 1e2), t = g.log_uniform(1e-2, 1e2);
    const auto w = g_greater_less(k, t);
    const double b = std::exp(-k / t);
    // g<(w) = e^{-w/T} g>(w) at w = +k; at w = -k written as g>(-k) = e^{-k/T} g<(-k)
    const double e1 = std::abs(w.less_at_plus - b * w.greater_at_plus) / w.less_at_plus;
    const double e2 = w.greater_at_minus > 0 ? std::abs(w.greater_at_minus - b * w.less_at_minus) / w.greater_at_minus : 0;
    worst = std::max({worst, e1, e2});
  }
  return {worst < 1e-14, fmt("max relative deviation %.3g over 100 draws", worst)};
}

// 4. 8 pi^2 A T^5 = \int sigma dt = 8 l^2 / (pi^2 tau_B^5), 100 draws, < 1e-12.
Outcome white_strength() {
  oracle::Gen g(4);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double l = g.log_uniform(1e-2, 1e2), t = g.log_uniform(1e-2, 1e2);
    const FieldCoupling c{pi * l * l, 1, t};
    const double tau = c.thermal_time();
    const double d = sigma_thermal_white_strength(c);
    const double from_kernel = white_strength_from_kernel(l, tau);
    const double integral =
        2 * oracle::integrate([&](double s) { return sigma_thermal_time(s, c); }, 0, 12 * tau, 400);
    const double closed = 8 * l * l / (pi * pi * std::pow(tau, 5));
    worst = std::max({worst, std::abs(d - closed) / closed, std::abs(from_kernel - closed) / closed,
                      std::abs(integral - closed) / closed});
  }
  return {worst < 1e-12, fmt("max relative deviation %.3g over 100 draws", worst)};
}

// 5. Autocovariance of 1e4 paths within 3 SE at multiples of the correlation time up to 10, all three laws.
Outcome noise_fidelity() {
  const auto t0 = std::chrono::steady_clock::now();
  ReducedParams p;
  p.epsilon = 1e-3;
  p.lambda = 5;
  p.theta_T = 0.5;
  struct Case {
    const char* name;
    NoiseSpec spec;
    double dt;
    std::function<double(double)> target;
  };
  const auto vac = vacuum_noise(p);
  const auto ou = thermal_ou_noise(p);
  const auto white = thermal_white_noise(p);
  const Case cases[] = {
      {"vacuum", vac, 0.02,
       [&](double lag) {
         return oracle::integrate([&](double w) { return vac.area_coeff * std::pow(w, 5) * std::cos(w * lag) / pi; },
                                  0, vac.cutoff, 400);
       }},
      {"ou", ou, ou.corr_time / 16, [&](double lag) { return ou.variance * std::exp(-lag / ou.corr_time); }},
      {"white", white, 0.01, [&](double lag) { return lag == 0 ? white.strength / 0.01 : 0.0; }},
  };
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto grid = UniformGrid::from_step(0, c.dt, 2048);
    const double tc = correlation_time(c.spec, c.dt);
    const auto stride = std::max<Eigen::Index>(1, std::llround(tc / c.dt));
    AutocovarianceAccumulator acc(grid, 10 * stride);
    for (int i = 0; i < 10000; ++i) acc.add(synthesize(c.spec, grid, derive_seed(20261017, i)));
    const auto est = acc.result();
    double worst = 0;
    for (Eigen::Index k = 0; k <= 10; ++k) {
      const Eigen::Index lag = k * stride;
      const double z = std::abs(est.kernel.values[lag].real() - c.target(double(lag) * c.dt)) /
                       std::max(est.standard_error[lag], 1e-300);
      worst = std::max(worst, z);
    }
    pass = pass && worst <= 3.0;
    detail += fmt("%s max z %.2f; ", c.name, worst);
  }
  const double secs = seconds_since(t0);
  return {pass && secs < 120, detail + fmt("%.1f s", secs)};
}

// 6. Noise-free decay over [0, 3000] at epsilon = 1e-3: fitted rate within 1% of Gamma, < 10 s.
Outcome vacuum_decay() {
  const auto t0 = std::chrono::steady_clock::now();
  ReducedParams p;
  p.epsilon = 1e-3;
  p.lambda = 5;
  p.amp0 = 1e-3;
  const auto traj =
      langevin_integrate(p, NoisePath::zero(UniformGrid::span(3000, 2 * pi / 200)), {p.amp0, 0}, LangevinMode::Vacuum);
  const auto fit = secular_fit(traj);
  const double gamma = p.area() / (720 * pi * pi);
  const double rel = std::abs(fit.decay_rate - gamma) / gamma;
  const double secs = seconds_since(t0);
  return {rel < 0.01 && std::abs(rg_envelope(p).decay_rate() - gamma) < 1e-15 && secs < 10,
          fmt("fitted %.6g vs Gamma %.6g (rel %.2g), %.2f s", fit.decay_rate, gamma, rel, secs)};
}

// 7. Perturbative-oracle shift vs secular_fit on the integrator within 1%; ratio to 3 eps lambda reported.
Outcome frequency_shift() {
  ReducedParams p;
  p.epsilon = 1e-3;
  p.lambda = 10;
  p.amp0 = 1e-3;
  const auto pert = mean_evolution_perturbative(p, UniformGrid::span(200, 2 * pi / 400));
  const double oracle_shift = secular_coefficients(pert).freq_shift();
  const auto traj =
      langevin_integrate(p, NoisePath::zero(UniformGrid::span(3000, 2 * pi / 200)), {p.amp0, 0}, LangevinMode::Vacuum);
  const double fitted = secular_fit(traj).freq_shift;
  const double rel = std::abs(fitted - oracle_shift) / std::abs(oracle_shift);
  const double squared_shift = p.area() * p.lambda / (240 * pi * pi);
  return {rel < 0.01, fmt("oracle %.6g, integrator %.6g (rel %.2g); integrator / (3 eps lambda) = %.4f", oracle_shift, fitted,
                          rel, fitted / squared_shift)};
}

// 8. Heating slope over 10 <= t <= 100 with 1e4 paths within 5%; Lambda -> 50 within 2 SE.
Outcome vacuum_heating() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto slope_for = [](double lambda, double dt) {
    EnsembleConfig c;
    c.params.epsilon = 1e-3;
    c.params.lambda = lambda;
    c.grid = UniformGrid::span(100, dt);
    c.mode = LangevinMode::Vacuum;
    c.options.dissipation = false;
    c.n_paths = 10000;
    c.seed = 20261017;
    return variance_slope(ensemble_run(c), {10, 100});
  };
  const auto s5 = slope_for(5, 0.02);
  const auto s50 = slope_for(50, std::min(0.02, pi / (4 * 50)));
  const double rate = 1e-3 * 720 * pi * pi / (1440 * pi * pi);
  const double rel = std::abs(s5.slope - rate) / rate;
  const double z = std::abs(s50.slope - s5.slope) / std::hypot(s5.se, s50.se);
  const double secs = seconds_since(t0);
  return {rel < 0.05 && z <= 2 && secs < 300,
          fmt("slope %.5g +- %.2g vs %.5g (rel %.3f); Lambda=50 slope %.4g +- %.2g (%.2f SE); %.1f s", s5.slope,
              s5.se, rate, rel, s50.slope, s50.se, z, secs)};
}

// 9. Stationary m<v^2> = T within 2% over 1e4 paths after 5 relaxation times.
Outcome equipartition() {
  ReducedParams p;
  p.epsilon = 1e-4;
  p.lambda = 1;
  // underdamped (gamma ~ 0.23), so 5 t_relax is past the slowest transient
  p.theta_T = 0.3;
  const double t_relax = relaxation_time(p, RelaxationRegime::Thermal);
  EnsembleConfig c;
  c.params = p;
  c.grid = UniformGrid::span(12 * t_relax, std::min({0.01, t_relax / 50, p.thermal_time() / 40}));
  c.mode = LangevinMode::ThermalWhite;
  c.n_paths = 10000;
  c.seed = 20261017;
  const auto rep = equipartition_check(ensemble_run(c), p, {5 * t_relax, c.grid.back()}, GammaMode::FdtConsistent, 0.02);
  return {rep.pass && std::abs(rep.ratio - 1) < 0.02,
          fmt("m<v^2>/T = %.4f +- %.4f (t_relax %.3g)", rep.ratio, rep.ratio_se, t_relax)};
}

// 10. SI headline numbers within a factor 3 of the quoted values.
Outcome si_numbers() {
  const auto phys = PhysicalParams::from_si(1.0, 100.0, 1.0, 5.0, 1.0, 10.0);
  const double t_relax =
      SiConversion::time_to_seconds(relaxation_time(phys, RelaxationRegime::Thermal, GammaMode::PaperLiteral));
  const double dl = max_fluctuation_ratio(phys);
  const double dm = std::abs(thermal_mass_shift(phys)) / phys.mass;
  // the same numbers straight from SI constants
  const double kt = oracle::si::keV;
  const double t_si = 1.0 / oracle::si::gamma_paper_literal(0.01, kt);
  const double dl_si = oracle::si::max_fluctuation_ratio(0.1, 1.0, 1.0, kt);
  const double dm_si = oracle::si::thermal_mass_shift_ratio(0.01, 1.0, kt);
  const bool consistent = std::abs(t_relax / t_si - 1) < 1e-6 && std::abs(dl / dl_si - 1) < 1e-6 &&
                          std::abs(dm / dm_si - 1) < 1e-6;
  const bool t_ok = within_factor(t_relax, 1e-2, 3), dl_ok = within_factor(dl, 1e-8, 3),
             dm_ok = within_factor(dm, 1e-16, 3);
  return {consistent && t_ok && dl_ok && dm_ok,
          fmt("t_relax %.3g s [%s], dl/l0 %.3g [%s], |dm/m| %.3g [%s], SI cross-check %s", t_relax,
              t_ok ? "ok" : "miss", dl, dl_ok ? "ok" : "miss", dm, dm_ok ? "ok" : "miss",
              consistent ? "agrees" : "DISAGREES")};
}

// 11. E / hbar w0 < 1e-4 per cycle in the laboratory regime.
Outcome energy_bound() {
  double worst = 0;
  oracle::Gen g(11);
  const auto quanta = [](const PhysicalParams& pp) { return energy_gain_per_cycle(pp) / pp.omega0; };
  worst = quanta(PhysicalParams::from_si(1.0, 100.0, 1.0, 5.0, 0.0, 10.0));
  for (int i = 0; i < 1000; ++i) {
    // masses 1 g .. 1 t, areas 1 .. 1e4 cm^2, frequencies 1 .. 1e6 / s, amplitudes l0 ~ sqrt(A)
    const double m = g.log_uniform(1e-3, 1e3), a = g.log_uniform(1, 1e4), w = g.log_uniform(1, 1e6);
    worst = std::max(worst, quanta(PhysicalParams::from_si(m, a, w, 5.0, 0.0, std::sqrt(a))));
  }
  return {worst < 1e-4, fmt("largest E/(hbar w0) per cycle %.3g", worst)};
}

// 12. Identical config and seed give byte-identical artifacts under different thread counts.
Outcome determinism() {
  const auto root = fs::temp_directory_path() / "mirrorlang_acceptance_12";
  fs::remove_all(root);
  const auto run_all = [&](const fs::path& out, int threads) {
    auto c = parse_config("epsilon = 1e-4\nlambda_ratio = 5\ntheta_T = 0.5\nn_paths = 48\nseed = 12\n");
    c.threads = threads;
    finalize(c);
    run_noise(c, NoiseKind::Vacuum, out / "noise_vacuum", {});
    run_noise(c, NoiseKind::ThermalOU, out / "noise_ou", {});
    auto h = c;
    h.t_max = 40;
    run_heating(h, KernelRegime::Vacuum, out / "heating", {});
    run_thermal(c, LangevinMode::ThermalWhite, out / "thermal", {});
    auto d = parse_config("epsilon = 1e-3\namp0 = 1e-3\nt_max = 300\ndt = 0.0314\nseed = 12\n");
    d.threads = threads;
    finalize(d);
    run_decay(d, out / "decay", {});
  };
  run_all(root / "a", 1);
  run_all(root / "b", 4);
  run_all(root / "c", 4);
  std::size_t files = 0, identical = 0;
  for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), root / "a");
    const auto a = read_file(e.path());
    bool same = true;
    for (const char* other : {"b", "c"}) {
      const auto p = root / other / rel;
      if (!fs::exists(p)) {
        same = false;
        continue;
      }
      const auto b = read_file(p);
      same = same && (rel.filename() == "summary.json" ? strip_wall_time(a) == strip_wall_time(b) : a == b);
    }
    ++files;
    identical += same;
  }
  return {files > 0 && identical == files,
          fmt("%zu of %zu artifacts identical across 3 runs (summary.json compared without wall_time_s)", identical,
              files)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria{
      {1, {"vacuum FDT identity", vacuum_fdt}},
      {2, {"thermal FDT identity", thermal_fdt}},
      {3, {"KMS relation", kms}},
      {4, {"white-noise strength", white_strength}},
      {5, {"noise synthesis fidelity", noise_fidelity}},
      {6, {"vacuum decay rate", vacuum_decay}},
      {7, {"frequency shift", frequency_shift}},
      {8, {"vacuum heating", vacuum_heating}},
      {9, {"thermal equipartition", equipartition}},
      {10, {"SI headline numbers", si_numbers}},
      {11, {"energy per cycle", energy_bound}},
      {12, {"determinism", determinism}},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  if (selected.empty())
    for (const auto& [n, _] : criteria) selected.push_back(n);

  bool all = true;
  for (int n : selected) {
    const auto it = criteria.find(n);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %2d %-26s %s  %s\n", n, it->second.first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
