#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>

#include "mirrorlang/io.hpp"
#include "mirrorlang/scenario.hpp"

using namespace mirrorlang;

namespace {

struct Common {
  std::string config;
  std::string out;
  std::string tol_file;
  bool strict = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> n_paths;
  std::optional<double> t_max;
  std::optional<double> dt;
  std::optional<int> threads;
  std::string gamma_mode;
};

void add_common(CLI::App* cmd, Common& c, bool ensemble, bool grid) {
  cmd->add_option("--config", c.config, "configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output path")->required();
  cmd->add_option("--tol-file", c.tol_file, "JSON tolerance overrides")->check(CLI::ExistingFile);
  cmd->add_flag("--strict", c.strict, "exit 3 when an acceptance target fails");
  cmd->add_option("--gamma-mode", c.gamma_mode, "thermal damping coefficient")
      ->check(CLI::IsMember({"fdt_consistent", "paper_literal"}));
  if (ensemble) {
    cmd->add_option("--seed", c.seed, "master seed (64-bit unsigned)");
    cmd->add_option("--n-paths", c.n_paths, "ensemble size")->check(CLI::Range(std::int64_t{2}, INT64_MAX));
    cmd->add_option("--threads", c.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  }
  if (grid) {
    cmd->add_option("--t-max", c.t_max, "simulated time span")->check(CLI::PositiveNumber);
    cmd->add_option("--dt", c.dt, "time step")->check(CLI::PositiveNumber);
  }
}

ScenarioConfig load(const Common& c) {
  ScenarioConfig cfg = load_config(c.config);
  if (c.seed) cfg.seed = c.seed;
  if (c.n_paths) cfg.n_paths = c.n_paths;
  if (c.t_max) cfg.t_max = *c.t_max;
  if (c.dt) cfg.dt = *c.dt;
  if (c.threads) cfg.threads = *c.threads;
  if (c.gamma_mode == "fdt_consistent") cfg.gamma_mode = GammaMode::FdtConsistent;
  if (c.gamma_mode == "paper_literal") cfg.gamma_mode = GammaMode::PaperLiteral;
  finalize(cfg);
  return cfg;
}

AcceptanceBands bands(const Common& c) { return c.tol_file.empty() ? AcceptanceBands{} : load_bands(c.tol_file); }

int report(const ScenarioResult& r, const Common& c) {
  if (r.summary.contains("targets")) {
    for (const auto& t : r.summary["targets"]) {
      std::printf("%-34s %-24s target %-12s %s\n", t["name"].get<std::string>().c_str(),
                  t["value"].is_number() ? format_number(t["value"].get<double>()).c_str() : "n/a",
                  format_number(t["target"].get<double>()).c_str(), t["pass"].get<bool>() ? "pass" : "FAIL");
    }
  }
  if (r.summary.contains("warnings"))
    for (const auto& w : r.summary["warnings"]) std::fprintf(stderr, "warning: %s\n", w.get<std::string>().c_str());
  std::printf("config_hash %s\n", r.summary["config_hash"].get<std::string>().c_str());
  return c.strict && !r.all_pass ? static_cast<int>(ExitCode::StrictFailure) : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Langevin dynamics of a mirror coupled to a scalar field"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  Common kc, fc, nc, dc, hc, tc, rc;

  auto* kernels = app.add_subcommand("kernels", "sample a dissipation or fluctuation kernel");
  add_common(kernels, kc, false, false);
  std::string k_domain = "freq", k_grid, k_kind = "chi", k_regime = "vacuum";
  kernels->add_option("--domain", k_domain)->check(CLI::IsMember({"time", "freq"}));
  kernels->add_option("--grid", k_grid, "MIN:MAX:N")->required();
  kernels->add_option("--kind", k_kind)->check(CLI::IsMember({"chi", "sigma"}));
  kernels->add_option("--regime", k_regime)->check(CLI::IsMember({"vacuum", "thermal"}));

  auto* fdt = app.add_subcommand("fdt-check", "check the fluctuation-dissipation theorem on built-in kernels");
  add_common(fdt, fc, false, false);
  std::string f_regime = "vacuum";
  double f_tol = AcceptanceBands{}.fdt_tol;
  fdt->add_option("--regime", f_regime)->check(CLI::IsMember({"thermal", "vacuum", "highT", "classical"}));
  fdt->add_option("--tol", f_tol)->check(CLI::PositiveNumber);

  auto* noise = app.add_subcommand("noise", "synthesize noise paths and their autocovariance");
  add_common(noise, nc, true, true);
  std::string n_spec = "vacuum";
  noise->add_option("--spec", n_spec)->check(CLI::IsMember({"vacuum", "thermal-ou", "white"}));

  auto* decay = app.add_subcommand("decay", "noise-free vacuum decay and secular fit");
  add_common(decay, dc, true, true);

  auto* heating = app.add_subcommand("heating", "velocity-variance growth from rest");
  add_common(heating, hc, true, true);
  std::string h_regime = "vacuum";
  heating->add_option("--regime", h_regime)->check(CLI::IsMember({"vacuum", "thermal"}));

  auto* thermal = app.add_subcommand("thermal", "thermal relaxation and equipartition");
  add_common(thermal, tc, true, true);
  std::string t_noise = "white";
  thermal->add_option("--noise", t_noise)->check(CLI::IsMember({"white", "ou"}));

  auto* rep = app.add_subcommand("report", "headline SI estimates");
  add_common(rep, rc, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc_ = app.exit(e);
    return rc_ == 0 ? 0 : static_cast<int>(ExitCode::Usage);
  }

  try {
    if (*kernels) {
      KernelRequest req;
      req.domain = k_domain == "time" ? KernelDomain::Time : KernelDomain::Frequency;
      req.kind = k_kind == "chi" ? KernelRequestKind::Chi : KernelRequestKind::Sigma;
      req.regime = k_regime == "vacuum" ? KernelRegime::Vacuum : KernelRegime::Thermal;
      req = parse_grid_triple(k_grid, req);
      return report(run_kernels(load(kc), req, kc.out), kc);
    }
    if (*fdt) {
      static const std::map<std::string, FdtRegime> regimes{{"thermal", FdtRegime::Thermal},
                                                            {"vacuum", FdtRegime::Vacuum},
                                                            {"highT", FdtRegime::HighT},
                                                            {"classical", FdtRegime::Classical}};
      const auto r = run_fdt_check(load(fc), regimes.at(f_regime), f_tol, fc.out);
      std::printf("%s max_rel_error %s tolerance %s %s\n", f_regime.c_str(),
                  format_number(r.summary["max_rel_error"].get<double>()).c_str(), format_number(f_tol).c_str(),
                  r.all_pass ? "pass" : "FAIL");
      return report(r, fc);
    }
    if (*noise) {
      const NoiseKind kind = n_spec == "vacuum"       ? NoiseKind::Vacuum
                             : n_spec == "thermal-ou" ? NoiseKind::ThermalOU
                                                      : NoiseKind::White;
      return report(run_noise(load(nc), kind, nc.out, bands(nc)), nc);
    }
    if (*decay) return report(run_decay(load(dc), dc.out, bands(dc)), dc);
    if (*heating)
      return report(run_heating(load(hc), h_regime == "vacuum" ? KernelRegime::Vacuum : KernelRegime::Thermal, hc.out,
                                bands(hc)),
                    hc);
    if (*thermal)
      return report(run_thermal(load(tc), t_noise == "ou" ? LangevinMode::ThermalOU : LangevinMode::ThermalWhite,
                                tc.out, bands(tc)),
                    tc);
    if (*rep) return report(run_report(load(rc), rc.out, bands(rc)), rc);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(exit_code_for(e.code()));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(ExitCode::Runtime);
  }
  return 0;
}
