#include "mirrorlang/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mirrorlang/io.hpp"

namespace mirrorlang {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double default_dt = 2.0 * pi / 200.0;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json header(const ScenarioConfig& c, const char* scenario) {
  json j;
  j["tool"] = "mirrorlang";
  j["tool_version"] = tool_version();
  j["bands_version"] = AcceptanceBands::version;
  j["scenario"] = scenario;
  j["config_hash"] = c.hash();
  j["master_seed"] = c.seed ? json(*c.seed) : json(nullptr);
  return j;
}

void add_target(ScenarioResult& r, const std::string& name, double value, double target, const std::string& band,
                bool pass) {
  json t;
  t["name"] = name;
  t["value"] = value;
  t["target"] = target;
  t["band"] = band;
  t["pass"] = pass;
  r.summary["targets"].push_back(std::move(t));
  r.all_pass = r.all_pass && pass;
}

bool within_rel(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

bool within_factor(double value, double target, double factor) {
  return value > 0 && target > 0 && value <= factor * target && value >= target / factor;
}

std::string rel_band(double rel) { return "relative " + format_number(rel); }
std::string factor_band(double f) { return "factor " + format_number(f); }

void finish(ScenarioResult& r, const Stopwatch& clock, const fs::path& summary_path) {
  r.summary["all_pass"] = r.all_pass;
  r.summary["wall_time_s"] = clock.seconds();
  if (!summary_path.empty()) write_atomic(summary_path, r.summary.dump(2) + "\n");
}

std::int64_t require_paths(const ScenarioConfig& c, const char* scenario) {
  if (!c.n_paths) throw Error(ErrorCode::MissingRequired, std::string(scenario) + " needs n_paths and seed");
  return *c.n_paths;
}

UniformGrid grid_or(const ScenarioConfig& c, double t_max, double dt) {
  return UniformGrid::span(c.t_max > 0 ? c.t_max : t_max, c.dt > 0 ? c.dt : dt);
}

void write_ensemble(const fs::path& path, const std::string& hash, const EnsembleStats& s) {
  write_csv(path, hash, {"t", "mean_q", "var_q", "var_v", "se_var_v"},
            {s.grid.values(), s.mean_q, s.var_q, s.var_v, s.se_var_v});
}

InitialCondition decay_ic(const ScenarioConfig& c) {
  const auto& p = c.reduced;
  return {c.q0.value_or(p.amp0 * std::cos(p.phase0)), c.v0.value_or(p.amp0 * std::sin(p.phase0))};
}

InitialCondition rest_ic(const ScenarioConfig& c) { return {c.q0.value_or(0.0), c.v0.value_or(0.0)}; }

}  // namespace

AcceptanceBands load_bands(const fs::path& path) {
  AcceptanceBands b;
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SyntaxError, path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::SyntaxError, path.string() + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw Error(ErrorCode::SyntaxError, "tolerance '" + key + "' must be a number");
    const double x = value.get<double>();
    if (key == "fdt_tol") b.fdt_tol = x;
    else if (key == "decay_rel") b.decay_rel = x;
    else if (key == "shift_rel") b.shift_rel = x;
    else if (key == "heating_rel") b.heating_rel = x;
    else if (key == "equipartition_rel") b.equipartition_rel = x;
    else if (key == "magnitude_factor") b.magnitude_factor = x;
    else if (key == "quanta_bound") b.quanta_bound = x;
    else if (key == "noise_z") b.noise_z = x;
    else throw Error(ErrorCode::UnknownKey, "unknown tolerance '" + key + "'");
  }
  return b;
}

ExitCode exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BlowUp:
    case ErrorCode::FitDiverged:
    case ErrorCode::NotStationary:
    case ErrorCode::GridMismatch:
    case ErrorCode::Io:
      return ExitCode::Runtime;
    default:
      return ExitCode::Usage;
  }
}

KernelRequest parse_grid_triple(const std::string& text, KernelRequest base) {
  double lo = 0, hi = 0;
  long long n = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lld%c", &lo, &hi, &n, &tail) != 3)
    throw Error(ErrorCode::SyntaxError, "grid must be MIN:MAX:N, got '" + text + "'");
  if (!(hi > lo) || n < 2) throw Error(ErrorCode::InvalidGrid, "grid needs MAX > MIN and N >= 2");
  base.min = lo;
  base.max = hi;
  base.n = static_cast<Eigen::Index>(n);
  return base;
}

// ---------------------------------------------------------------------------

ScenarioResult run_kernels(const ScenarioConfig& config, const KernelRequest& req, const fs::path& out_csv) {
  Stopwatch clock;
  const auto c = coupling(config.reduced);
  const Eigen::VectorXd axis = linspace_axis(req.min, req.max, req.n);
  const bool freq = req.domain == KernelDomain::Frequency;
  const bool chi = req.kind == KernelRequestKind::Chi;
  if (!freq && chi)
    throw Error(ErrorCode::DomainMismatch, "chi is distributional in the time domain; request --domain freq");

  SampledKernel k;
  if (req.regime == KernelRegime::Vacuum) {
    if (chi) k = sample_chi_vacuum(axis, c);
    else k = freq ? sample_sigma_vacuum(axis, c) : sample_sigma_vacuum_time(axis, c);
  } else {
    if (chi) k = sample_chi_ohmic(axis, gamma_thermal(c, config.gamma_mode));
    else k = freq ? sample_sigma_thermal_freq(axis, c) : sample_sigma_thermal_time(axis, c, config.sigma_variant);
  }
  write_csv(out_csv, config.hash(), {"grid_value", "re", "im"}, {k.grid, k.real(), k.imag()});

  ScenarioResult r;
  r.summary = header(config, "kernels");
  r.summary["points"] = req.n;
  finish(r, clock, {});
  return r;
}

ScenarioResult run_fdt_check(const ScenarioConfig& config, FdtRegime regime, double tol, const fs::path& out_json) {
  Stopwatch clock;
  const auto c = coupling(config.reduced);
  constexpr Eigen::Index n = 10000;
  const auto symmetric_axis = [&] {
    if (!(c.temperature > 0)) throw Error(ErrorCode::ZeroTemperature, "this FDT regime needs theta_T > 0");
    const double w = std::max(c.cutoff, 10.0 * c.temperature);
    return linspace_axis(-w, w, n);
  };

  FdtReport rep;
  switch (regime) {
    case FdtRegime::Vacuum: {
      if (!(c.cutoff > 0)) throw Error(ErrorCode::InvalidParams, "vacuum FDT check needs lambda_ratio > 0");
      const Eigen::VectorXd axis = linspace_axis(c.cutoff / n, c.cutoff, n);
      rep = check_fdt_vacuum(sample_sigma_vacuum(axis, c), sample_chi_vacuum(axis, c), tol);
      break;
    }
    case FdtRegime::Thermal: {
      const Eigen::VectorXd axis = symmetric_axis();
      const double gamma = gamma_thermal(c, config.gamma_mode);
      rep = check_fdt_thermal(sample_sigma_ohmic_thermal(axis, gamma, c.temperature), sample_chi_ohmic(axis, gamma),
                              c.temperature, tol);
      break;
    }
    case FdtRegime::HighT: {
      const Eigen::VectorXd axis = symmetric_axis();
      const double d = sigma_thermal_white_strength(c);
      rep = check_fdt_highT(sample_sigma_white(axis, d), sample_chi_ohmic(axis, gamma_thermal(c, config.gamma_mode)),
                            c.temperature, tol);
      break;
    }
    case FdtRegime::Classical:
      rep = check_fdt_classical(sigma_thermal_white_strength(c), gamma_thermal(c, config.gamma_mode), c.temperature,
                                tol);
      break;
  }

  ScenarioResult r;
  r.summary = header(config, "fdt-check");
  r.summary["regime"] = to_string(rep.regime);
  r.summary["max_rel_error"] = rep.max_rel_error;
  r.summary["pass"] = rep.pass;
  r.summary["tolerance"] = rep.tolerance;
  r.summary["grid"] = std::vector<double>(rep.grid.data(), rep.grid.data() + rep.grid.size());
  r.all_pass = rep.pass;
  finish(r, clock, out_json);
  return r;
}

ScenarioResult run_noise(const ScenarioConfig& config, NoiseKind kind, const fs::path& out_dir,
                         const AcceptanceBands& bands) {
  Stopwatch clock;
  const auto n_paths = require_paths(config, "noise");
  const auto& p = config.reduced;

  NoiseSpec spec;
  double dt = 0;
  switch (kind) {
    case NoiseKind::Vacuum: {
      auto v = vacuum_noise(p);
      v.oversampling = config.oversampling;
      spec = v;
      dt = std::min(default_dt, pi / (4.0 * std::max(p.lambda, 1e-300)));
      break;
    }
    case NoiseKind::ThermalOU: {
      const auto ou = thermal_ou_noise(p);
      spec = ou;
      dt = ou.corr_time / 16.0;
      break;
    }
    case NoiseKind::White:
      spec = thermal_white_noise(p);
      dt = 0.01;
      break;
  }
  if (config.dt > 0) dt = config.dt;
  const UniformGrid grid = config.t_max > 0 ? UniformGrid::span(config.t_max, dt) : UniformGrid::from_step(0, dt, 2048);

  const double tc = correlation_time(spec, dt);
  const auto lag_step = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::lround(tc / dt)));
  const Eigen::Index max_lag = std::min<Eigen::Index>(grid.size - 1, 10 * lag_step);

  const std::string hash = config.hash();
  AutocovarianceAccumulator acc(grid, max_lag);
  const int width = static_cast<int>(std::to_string(n_paths - 1).size());
  for (std::int64_t i = 0; i < n_paths; ++i) {
    const auto path = synthesize(spec, grid, derive_seed(*config.seed, static_cast<std::uint64_t>(i)));
    acc.add(path);
    char name[64];
    std::snprintf(name, sizeof name, "path_%0*lld.csv", width, static_cast<long long>(i));
    write_csv(out_dir / name, hash, {"t", "eta"}, {grid.values(), path.values});
  }
  const auto est = acc.result();
  Eigen::VectorXd target(max_lag + 1);
  for (Eigen::Index l = 0; l <= max_lag; ++l) target[l] = target_autocovariance(spec, est.kernel.grid[l], dt);
  write_csv(out_dir / "autocov.csv", hash, {"lag", "autocov", "se", "target"},
            {est.kernel.grid, est.kernel.real(), est.standard_error, target});

  double worst = 0;
  for (Eigen::Index l = 0; l <= max_lag; l += lag_step) {
    const double se = est.standard_error[l];
    const double diff = std::abs(est.kernel.values[l].real() - target[l]);
    worst = std::max(worst, se > 0 ? diff / se : (diff > 0 ? INFINITY : 0.0));
  }

  ScenarioResult r;
  r.summary = header(config, "noise");
  r.summary["n_paths"] = n_paths;
  r.summary["dt"] = dt;
  r.summary["points"] = grid.size;
  r.summary["correlation_time"] = tc;
  if (n_paths >= 2) add_target(r, "autocov_max_z", worst, bands.noise_z, "max z-score at multiples of the correlation time",
                               worst <= bands.noise_z);
  finish(r, clock, out_dir / "summary.json");
  return r;
}

UniformGrid decay_grid(const ScenarioConfig& config) { return grid_or(config, 3000.0, default_dt); }

ScenarioResult run_decay(const ScenarioConfig& config, const fs::path& out_dir, const AcceptanceBands& bands) {
  Stopwatch clock;
  const auto& p = config.reduced;
  const UniformGrid grid = decay_grid(config);
  const std::string hash = config.hash();
  const InitialCondition ic = decay_ic(config);

  const auto traj = langevin_integrate(p, NoisePath::zero(grid), ic, LangevinMode::Vacuum);
  write_csv(out_dir / "trajectory.csv", hash, {"t", "q", "v"}, {grid.values(), traj.q, traj.v});

  const RgEnvelope env(p);
  Eigen::VectorXd amp(grid.size), rg(grid.size);
  for (Eigen::Index i = 0; i < grid.size; ++i) {
    amp[i] = env.amplitude(grid[i]);
    rg[i] = env.value(grid[i]);
  }
  write_csv(out_dir / "envelope.csv", hash, {"t", "amplitude", "rg_value"}, {grid.values(), amp, rg});

  const auto fit = secular_fit(traj);

  // Perturbative quadrature oracle on its own fine grid; the secular terms
  // are linear in t, so a short span suffices.
  double oracle_span = 200.0;
  if (p.epsilon > 0) oracle_span = std::min(oracle_span, 5.0 / p.epsilon);
  const auto oracle = secular_coefficients(
      mean_evolution_perturbative(p, UniformGrid::span(oracle_span, 2.0 * pi / 400.0), config.max_epsilon));

  ScenarioResult r;
  r.summary = header(config, "decay");
  json& fj = r.summary["fit"];
  fj["decay_rate"] = fit.decay_rate;
  fj["decay_rate_se"] = fit.decay_rate_se;
  fj["freq_shift"] = fit.freq_shift;
  fj["freq_shift_se"] = fit.freq_shift_se;
  fj["amplitude"] = fit.amplitude;
  fj["phase"] = fit.phase;
  fj["iterations"] = fit.iterations;
  json& oj = r.summary["oracle"];
  oj["decay_rate"] = oracle.decay_rate();
  oj["freq_shift"] = oracle.freq_shift();
  json& ej = r.summary["rg_envelope"];
  ej["decay_rate"] = env.decay_rate();
  ej["freq_shift_paper"] = env.freq_shift_paper();
  ej["freq_shift_reduced"] = env.freq_shift_reduced();
  ej["relaxation_time"] = p.epsilon > 0 ? json(env.relaxation_time()) : json(nullptr);
  r.summary["fit_shift_over_paper_shift"] =
      env.freq_shift_paper() != 0 ? json(fit.freq_shift / env.freq_shift_paper()) : json(nullptr);

  if (p.epsilon > 0)
    add_target(r, "decay_rate", fit.decay_rate, env.decay_rate(), rel_band(bands.decay_rel),
               within_rel(fit.decay_rate, env.decay_rate(), bands.decay_rel));
  const double scale = std::max(std::abs(oracle.freq_shift()), env.decay_rate());
  add_target(r, "freq_shift_vs_oracle", fit.freq_shift, oracle.freq_shift(), rel_band(bands.shift_rel),
             std::abs(fit.freq_shift - oracle.freq_shift()) <= bands.shift_rel * scale);

  if (config.n_paths) {
    EnsembleConfig ec;
    ec.params = p;
    ec.grid = grid;
    ec.mode = LangevinMode::Vacuum;
    ec.ic = ic;
    ec.n_paths = *config.n_paths;
    ec.seed = *config.seed;
    ec.threads = config.threads;
    ec.vacuum_oversampling = config.oversampling;
    write_ensemble(out_dir / "ensemble.csv", hash, ensemble_run(ec));
    r.summary["n_paths"] = *config.n_paths;
  }
  finish(r, clock, out_dir / "summary.json");
  return r;
}

namespace {

TimeWindow heating_window(const ScenarioConfig& config, KernelRegime regime) {
  const auto mode = regime == KernelRegime::Vacuum ? LangevinMode::Vacuum : LangevinMode::ThermalWhite;
  const auto w = default_heating_window(config.reduced, mode, config.gamma_mode);
  return {config.window_begin.value_or(w.begin), config.window_end.value_or(w.end)};
}

}  // namespace

UniformGrid heating_grid(const ScenarioConfig& config, KernelRegime regime) {
  return grid_or(config, heating_window(config, regime).end, default_dt);
}

ScenarioResult run_heating(const ScenarioConfig& config, KernelRegime regime, const fs::path& out_dir,
                           const AcceptanceBands& bands) {
  Stopwatch clock;
  const auto n_paths = require_paths(config, "heating");
  const auto& p = config.reduced;
  const UniformGrid grid = heating_grid(config, regime);
  TimeWindow window = heating_window(config, regime);
  window.end = std::min(window.end, grid.back());

  EnsembleConfig ec;
  ec.params = p;
  ec.grid = grid;
  ec.mode = regime == KernelRegime::Vacuum ? LangevinMode::Vacuum : LangevinMode::ThermalWhite;
  ec.options.dissipation = false;
  ec.options.gamma_mode = config.gamma_mode;
  ec.ic = rest_ic(config);
  ec.n_paths = n_paths;
  ec.seed = *config.seed;
  ec.threads = config.threads;
  ec.vacuum_oversampling = config.oversampling;
  const auto stats = ensemble_run(ec);
  write_ensemble(out_dir / "ensemble.csv", config.hash(), stats);

  const auto slope = variance_slope(stats, window);
  const double target = regime == KernelRegime::Vacuum ? vacuum_heating_rate(p) : thermal_heating_rate(p);

  ScenarioResult r;
  r.summary = header(config, "heating");
  r.summary["regime"] = regime == KernelRegime::Vacuum ? "vacuum" : "thermal";
  r.summary["n_paths"] = n_paths;
  r.summary["window"] = {window.begin, window.end};
  r.summary["slope"] = slope.slope;
  r.summary["slope_se"] = slope.se;
  r.summary["intercept"] = slope.intercept;
  if (regime == KernelRegime::Vacuum) {
    r.summary["energy_per_cycle_mc"] = 0.5 * slope.slope * 2.0 * pi;
    r.summary["energy_per_cycle_closed_form"] = 0.5 * target * 2.0 * pi;
  }
  add_target(r, "variance_slope", slope.slope, target, rel_band(bands.heating_rel),
             within_rel(slope.slope, target, bands.heating_rel));
  finish(r, clock, out_dir / "summary.json");
  return r;
}

UniformGrid thermal_grid(const ScenarioConfig& config) {
  const auto& p = config.reduced;
  const double t_relax = relaxation_time(p, RelaxationRegime::Thermal, config.gamma_mode);
  const double dt = std::min({0.01, t_relax / 50.0, p.thermal_time() / 40.0});
  return grid_or(config, 12.0 * t_relax, dt);
}

ScenarioResult run_thermal(const ScenarioConfig& config, LangevinMode mode, const fs::path& out_dir,
                           const AcceptanceBands& bands) {
  Stopwatch clock;
  if (mode == LangevinMode::Vacuum) throw Error(ErrorCode::InvalidParams, "thermal scenario needs a thermal mode");
  const auto n_paths = require_paths(config, "thermal");
  const auto& p = config.reduced;
  const UniformGrid grid = thermal_grid(config);
  const double t_relax = relaxation_time(p, RelaxationRegime::Thermal, config.gamma_mode);

  EnsembleConfig ec;
  ec.params = p;
  ec.grid = grid;
  ec.mode = mode;
  ec.options.gamma_mode = config.gamma_mode;
  ec.ic = rest_ic(config);
  ec.n_paths = n_paths;
  ec.seed = *config.seed;
  ec.threads = config.threads;
  const auto stats = ensemble_run(ec);
  write_ensemble(out_dir / "ensemble.csv", config.hash(), stats);

  const TimeWindow window{config.window_begin.value_or(5.0 * t_relax), config.window_end.value_or(grid.back())};
  const double predicted = stationary_velocity_variance(p, mode, config.gamma_mode);

  ScenarioResult r;
  r.summary = header(config, "thermal");
  r.summary["mode"] = mode == LangevinMode::ThermalOU ? "thermal_ou" : "thermal_white";
  r.summary["gamma_mode"] = to_string(config.gamma_mode);
  r.summary["n_paths"] = n_paths;
  r.summary["relaxation_time"] = t_relax;
  r.summary["window"] = {window.begin, window.end};
  r.summary["predicted_var_v"] = predicted;
  if (const auto warn = thermal_regime_warning(coupling(p), 1.0)) r.summary["warnings"].push_back(*warn);

  try {
    const auto eq = equipartition_check(stats, p, window, config.gamma_mode, bands.equipartition_rel);
    r.summary["equipartition_ratio"] = eq.ratio;
    r.summary["equipartition_ratio_se"] = eq.ratio_se;
    if (!eq.reason.empty()) r.summary["equipartition_note"] = eq.reason;
    const double expected = predicted / p.temperature();
    add_target(r, "stationary_var_v_over_T", eq.ratio, expected, rel_band(bands.equipartition_rel),
               eq.ratio > 0 && within_rel(eq.ratio, expected, bands.equipartition_rel));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotStationary) throw;
    r.summary["equipartition_note"] = e.what();
    add_target(r, "stationary_var_v_over_T", NAN, predicted / p.temperature(), rel_band(bands.equipartition_rel),
               false);
  }
  finish(r, clock, out_dir / "summary.json");
  return r;
}

ScenarioResult run_report(const ScenarioConfig& config, const fs::path& out_json, const AcceptanceBands& bands) {
  Stopwatch clock;
  if (!config.physical) throw Error(ErrorCode::MissingRequired, "report needs the dimensional parameter block");
  const PhysicalParams& pp = *config.physical;

  ScenarioResult r;
  r.summary = header(config, "report");
  json& in = r.summary["inputs"];
  in["m_kg"] = config.m_kg;
  in["area_cm2"] = config.area_cm2;
  in["omega0_per_s"] = config.omega0_per_s;
  in["lambda_ratio"] = config.reduced.lambda;
  in["T_keV"] = config.T_keV;
  in["l0_cm"] = SiConversion::length_to_meters(pp.amplitude0) * 100.0;
  r.summary["epsilon"] = config.reduced.epsilon;

  const double t_vac = SiConversion::time_to_seconds(relaxation_time(pp, RelaxationRegime::Vacuum));
  r.summary["t_relax_vacuum_s"] = t_vac;

  const double e_cycle = energy_gain_per_cycle(pp);
  r.summary["energy_per_cycle_eV"] = e_cycle;
  const double quanta = e_cycle / pp.omega0;
  add_target(r, "energy_per_cycle_quanta", quanta, bands.quanta_bound, "upper bound", quanta < bands.quanta_bound);

  if (pp.temperature > 0) {
    const double t_fdt = SiConversion::time_to_seconds(relaxation_time(pp, RelaxationRegime::Thermal));
    const double t_lit =
        SiConversion::time_to_seconds(relaxation_time(pp, RelaxationRegime::Thermal, GammaMode::PaperLiteral));
    r.summary["t_relax_thermal_fdt_consistent_s"] = t_fdt;
    add_target(r, "t_relax_thermal_paper_literal_s", t_lit, 1e-2, factor_band(bands.magnitude_factor),
               within_factor(t_lit, 1e-2, bands.magnitude_factor));

    const double dm = std::abs(thermal_mass_shift(pp)) / pp.mass;
    add_target(r, "thermal_mass_shift_ratio", dm, 1e-16, factor_band(bands.magnitude_factor),
               within_factor(dm, 1e-16, bands.magnitude_factor));

    if (pp.amplitude0 > 0) {
      const double ratio = max_fluctuation_ratio(pp);
      add_target(r, "max_fluctuation_ratio", ratio, 1e-8, factor_band(bands.magnitude_factor),
                 within_factor(ratio, 1e-8, bands.magnitude_factor));
    }
    // Velocity variance reached at t = t_relax, in (m/s)^2: the linear
    // growth law and its FDT-consistent saturation k_B T / m.
    const double c2 = SiConversion::speed_of_light * SiConversion::speed_of_light;
    const double slope = thermal_heating_rate(pp);
    json& dv = r.summary["delta_v2_max_m2_per_s2"];
    dv["k_B_T_over_m"] = pp.temperature / pp.mass * c2;
    dv["slope_times_t_relax_fdt_consistent"] =
        slope * relaxation_time(pp, RelaxationRegime::Thermal) * c2;
    dv["slope_times_t_relax_paper_literal"] =
        slope * relaxation_time(pp, RelaxationRegime::Thermal, GammaMode::PaperLiteral) * c2;
    if (const auto warn = thermal_regime_warning(coupling(pp), pp.omega0)) r.summary["warnings"].push_back(*warn);
  }
  finish(r, clock, out_json);
  return r;
}

std::string strip_wall_time(const std::string& summary_json) {
  auto j = json::parse(summary_json);
  j.erase("wall_time_s");
  return j.dump(2);
}

}  // namespace mirrorlang
