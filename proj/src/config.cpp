#include "mirrorlang/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "mirrorlang/io.hpp"

namespace mirrorlang {

namespace {

enum class KeyKind { Real, Count, Seed, GammaModeKey, SigmaVariantKey };

struct KeyInfo {
  std::string_view name;
  KeyKind kind;
};

constexpr std::array<KeyInfo, 24> known_keys{{
    {"m_kg", KeyKind::Real},
    {"area_cm2", KeyKind::Real},
    {"omega0_per_s", KeyKind::Real},
    {"lambda_ratio", KeyKind::Real},
    {"T_keV", KeyKind::Real},
    {"l0_cm", KeyKind::Real},
    {"theta0_s", KeyKind::Real},
    {"epsilon", KeyKind::Real},
    {"amp0", KeyKind::Real},
    {"theta_T", KeyKind::Real},
    {"t_max", KeyKind::Real},
    {"dt", KeyKind::Real},
    {"n_paths", KeyKind::Count},
    {"seed", KeyKind::Seed},
    {"threads", KeyKind::Count},
    {"gamma_mode", KeyKind::GammaModeKey},
    {"sigma_variant", KeyKind::SigmaVariantKey},
    {"max_epsilon", KeyKind::Real},
    {"oversampling", KeyKind::Real},
    {"q0", KeyKind::Real},
    {"v0", KeyKind::Real},
    {"window_begin", KeyKind::Real},
    {"window_end", KeyKind::Real},
    {"phase0", KeyKind::Real},
}};

constexpr std::array<std::string_view, 6> physical_keys{"m_kg", "area_cm2", "omega0_per_s", "T_keV", "l0_cm",
                                                        "theta0_s"};
constexpr std::array<std::string_view, 4> reduced_keys{"epsilon", "amp0", "theta_T", "phase0"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& list, std::string_view key) {
  return std::find(list.begin(), list.end(), key) != list.end();
}

const KeyInfo* find_key(std::string_view key) {
  for (const auto& k : known_keys)
    if (k.name == key) return &k;
  return nullptr;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(ErrorCode code, int line, const std::string& msg) {
  throw Error(code, (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + msg);
}

struct Entry {
  std::string value;
  int line;
};

double parse_real(const Entry& e, std::string_view key) {
  double x = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, last, x);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(x))
    fail(ErrorCode::SyntaxError, e.line, std::string(key) + ": not a finite number: '" + e.value + "'");
  return x;
}

std::uint64_t parse_unsigned(const Entry& e, std::string_view key) {
  std::uint64_t x = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto res = std::from_chars(first, last, x);
  if (res.ec != std::errc() || res.ptr != last)
    fail(ErrorCode::SyntaxError, e.line, std::string(key) + ": not an unsigned integer: '" + e.value + "'");
  return x;
}

void require_nonneg(double x, const Entry& e, std::string_view key) {
  if (!(x >= 0)) fail(ErrorCode::InvalidParams, e.line, std::string(key) + " must be non-negative");
}

void require_positive(double x, const Entry& e, std::string_view key) {
  if (!(x > 0)) fail(ErrorCode::InvalidParams, e.line, std::string(key) + " must be positive");
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

const char* to_string(ThermalSigmaVariant v) noexcept { return v == ThermalSigmaVariant::Full ? "full" : "leading"; }

ScenarioConfig parse_config(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  int line_no = 0;
  int first_physical = 0, first_reduced = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(ErrorCode::SyntaxError, line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(ErrorCode::SyntaxError, line_no, "expected 'key = value'");
    if (!find_key(key)) fail(ErrorCode::UnknownKey, line_no, "unknown key '" + std::string(key) + "'");
    if (entries.count(key)) fail(ErrorCode::SyntaxError, line_no, "duplicate key '" + std::string(key) + "'");

    if (contains(physical_keys, key)) {
      if (first_reduced) fail(ErrorCode::ConflictingKeys, line_no,
                              "'" + std::string(key) + "' conflicts with the dimensionless block started on line " +
                                  std::to_string(first_reduced));
      if (!first_physical) first_physical = line_no;
    } else if (contains(reduced_keys, key)) {
      if (first_physical) fail(ErrorCode::ConflictingKeys, line_no,
                               "'" + std::string(key) + "' conflicts with the dimensional block started on line " +
                                   std::to_string(first_physical));
      if (!first_reduced) first_reduced = line_no;
    }
    entries.emplace(std::string(key), Entry{std::string(value), line_no});
  }

  ScenarioConfig c;
  const auto real = [&](std::string_view key) -> std::optional<std::pair<double, const Entry*>> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return std::make_pair(parse_real(it->second, key), &it->second);
  };

  double lambda_ratio = 5.0;
  if (auto v = real("lambda_ratio")) {
    require_nonneg(v->first, *v->second, "lambda_ratio");
    lambda_ratio = v->first;
  }
  if (auto v = real("max_epsilon")) {
    require_positive(v->first, *v->second, "max_epsilon");
    c.max_epsilon = v->first;
  }

  if (first_physical) {
    for (std::string_view key : {"m_kg", "area_cm2", "omega0_per_s"})
      if (!entries.count(key))
        fail(ErrorCode::MissingRequired, 0, "dimensional block needs '" + std::string(key) + "'");
    const auto m = real("m_kg"), a = real("area_cm2"), w = real("omega0_per_s");
    require_positive(m->first, *m->second, "m_kg");
    require_positive(a->first, *a->second, "area_cm2");
    require_positive(w->first, *w->second, "omega0_per_s");
    c.m_kg = m->first;
    c.area_cm2 = a->first;
    c.omega0_per_s = w->first;
    if (auto v = real("T_keV")) {
      require_nonneg(v->first, *v->second, "T_keV");
      c.T_keV = v->first;
    }
    if (auto v = real("l0_cm")) {
      require_nonneg(v->first, *v->second, "l0_cm");
      c.l0_cm = v->first;
    }
    if (auto v = real("theta0_s")) c.theta0_s = v->first;
  } else if (first_reduced) {
    if (!entries.count("epsilon")) fail(ErrorCode::MissingRequired, 0, "dimensionless block needs 'epsilon'");
    const auto e = real("epsilon");
    require_nonneg(e->first, *e->second, "epsilon");
    c.reduced.epsilon = e->first;
    if (auto v = real("amp0")) {
      require_nonneg(v->first, *v->second, "amp0");
      c.reduced.amp0 = v->first;
    }
    if (auto v = real("theta_T")) {
      require_nonneg(v->first, *v->second, "theta_T");
      c.reduced.theta_T = v->first;
    }
    if (auto v = real("phase0")) c.reduced.phase0 = v->first;
  } else {
    fail(ErrorCode::MissingRequired, 0, "no parameter block: give 'epsilon' or 'm_kg', 'area_cm2', 'omega0_per_s'");
  }
  c.reduced.lambda = lambda_ratio;

  if (auto v = real("t_max")) {
    require_positive(v->first, *v->second, "t_max");
    c.t_max = v->first;
  }
  if (auto v = real("dt")) {
    require_positive(v->first, *v->second, "dt");
    c.dt = v->first;
  }
  if (auto v = real("oversampling")) {
    if (!(v->first >= 1)) fail(ErrorCode::InvalidParams, v->second->line, "oversampling must be at least 1");
    c.oversampling = v->first;
  }
  if (auto v = real("q0")) c.q0 = v->first;
  if (auto v = real("v0")) c.v0 = v->first;
  if (auto v = real("window_begin")) c.window_begin = v->first;
  if (auto v = real("window_end")) c.window_end = v->first;

  if (const auto it = entries.find("n_paths"); it != entries.end()) {
    const auto n = parse_unsigned(it->second, "n_paths");
    if (n < 2) fail(ErrorCode::InvalidParams, it->second.line, "n_paths must be at least 2");
    c.n_paths = static_cast<std::int64_t>(n);
  }
  if (const auto it = entries.find("seed"); it != entries.end()) c.seed = parse_unsigned(it->second, "seed");
  if (const auto it = entries.find("threads"); it != entries.end())
    c.threads = static_cast<int>(parse_unsigned(it->second, "threads"));
  if (const auto it = entries.find("gamma_mode"); it != entries.end()) {
    if (it->second.value == "fdt_consistent") c.gamma_mode = GammaMode::FdtConsistent;
    else if (it->second.value == "paper_literal") c.gamma_mode = GammaMode::PaperLiteral;
    else fail(ErrorCode::SyntaxError, it->second.line, "gamma_mode must be fdt_consistent or paper_literal");
  }
  if (const auto it = entries.find("sigma_variant"); it != entries.end()) {
    if (it->second.value == "leading") c.sigma_variant = ThermalSigmaVariant::Leading;
    else if (it->second.value == "full") c.sigma_variant = ThermalSigmaVariant::Full;
    else fail(ErrorCode::SyntaxError, it->second.line, "sigma_variant must be leading or full");
  }

  if (c.n_paths && !c.seed)
    fail(ErrorCode::MissingRequired, entries.at("n_paths").line, "'n_paths' requires 'seed'");
  finalize(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

void finalize(ScenarioConfig& c) {
  if (c.n_paths && !c.seed) throw Error(ErrorCode::MissingRequired, "an ensemble (n_paths) requires a seed");
  if (c.n_paths && *c.n_paths < 2) throw Error(ErrorCode::InvalidParams, "n_paths must be at least 2");
  if (c.m_kg > 0) {
    const double lambda = c.reduced.lambda;
    c.physical = PhysicalParams::from_si(c.m_kg, c.area_cm2, c.omega0_per_s, lambda, c.T_keV, c.l0_cm, c.theta0_s);
    c.reduced = reduce(*c.physical, c.max_epsilon);
  } else {
    c.reduced.validate(c.max_epsilon);
  }
}

std::string ScenarioConfig::canonical() const {
  std::map<std::string, std::string> kv;
  const auto put = [&](const std::string& k, double x) { kv[k] = format_number(x); };
  if (physical) {
    kv["block"] = "dimensional";
    put("m_kg", m_kg);
    put("area_cm2", area_cm2);
    put("omega0_per_s", omega0_per_s);
    put("T_keV", T_keV);
    put("l0_cm", l0_cm);
    put("theta0_s", theta0_s);
  } else {
    kv["block"] = "dimensionless";
  }
  put("epsilon", reduced.epsilon);
  put("lambda_ratio", reduced.lambda);
  put("theta_T", reduced.theta_T);
  put("amp0", reduced.amp0);
  put("phase0", reduced.phase0);
  put("t_max", t_max);
  put("dt", dt);
  kv["n_paths"] = n_paths ? std::to_string(*n_paths) : "none";
  kv["seed"] = seed ? std::to_string(*seed) : "none";
  kv["gamma_mode"] = gamma_mode == GammaMode::PaperLiteral ? "paper_literal" : "fdt_consistent";
  kv["sigma_variant"] = to_string(sigma_variant);
  put("max_epsilon", max_epsilon);
  put("oversampling", oversampling);
  kv["q0"] = q0 ? format_number(*q0) : "default";
  kv["v0"] = v0 ? format_number(*v0) : "default";
  kv["window_begin"] = window_begin ? format_number(*window_begin) : "default";
  kv["window_end"] = window_end ? format_number(*window_end) : "default";

  std::string out;
  for (const auto& [k, v] : kv) out += k + '=' + v + '\n';
  return out;
}

std::string ScenarioConfig::hash() const { return hex64(fnv1a(canonical())); }

}  // namespace mirrorlang
