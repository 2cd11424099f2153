#include "critdamp/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "critdamp/csv.hpp"
#include "critdamp/errors.hpp"

namespace critdamp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

[[noreturn]] void type_mismatch(std::string_view key, std::string_view where,
                           std::string_view expected, std::string_view value) {
  throw ConfigError("type mismatch for " + quoted(key) + " (" + std::string(where) +
                    "): expected " + std::string(expected) + ", got " + quoted(value));
}

double as_number(std::string_view key, std::string_view value, std::string_view where) {
  try {
    return parse_double(value);
  } catch (const std::invalid_argument&) {
    type_mismatch(key, where, "a number", value);
  }
}

std::size_t as_count(std::string_view key, std::string_view value, std::string_view where) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    type_mismatch(key, where, "a non-negative integer", value);
  }
  return out;
}

bool as_bool(std::string_view key, std::string_view value, std::string_view where) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  type_mismatch(key, where, "true or false", value);
}

std::vector<double> as_list(std::string_view key, std::string_view value,
                            std::string_view where) {
  std::vector<double> out;
  for (const std::string& field : split_csv_line(value)) {
    out.push_back(as_number(key, trim(field), where));
  }
  if (out.empty()) type_mismatch(key, where, "a comma-separated list of numbers", value);
  return out;
}

std::string as_text(std::string_view value) {
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    value = value.substr(1, value.size() - 2);
  }
  return std::string(value);
}

using Setter =
    std::function<void(ExperimentConfig&, std::string_view, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto number = [&t](const char* key, double ExperimentConfig::*field) {
      t[key] = [field](ExperimentConfig& c, std::string_view k, std::string_view v,
                       std::string_view w) { c.*field = as_number(k, v, w); };
    };
    auto optional_number = [&t](const char* key,
                                std::optional<double> ExperimentConfig::*field) {
      t[key] = [field](ExperimentConfig& c, std::string_view k, std::string_view v,
                       std::string_view w) { c.*field = as_number(k, v, w); };
    };
    auto count = [&t](const char* key, std::size_t ExperimentConfig::*field) {
      t[key] = [field](ExperimentConfig& c, std::string_view k, std::string_view v,
                       std::string_view w) { c.*field = as_count(k, v, w); };
    };
    auto text = [&t](const char* key, std::string ExperimentConfig::*field) {
      t[key] = [field](ExperimentConfig& c, std::string_view, std::string_view v,
                       std::string_view) { c.*field = as_text(v); };
    };
    auto list = [&t](const char* key, std::vector<double> ExperimentConfig::*field) {
      t[key] = [field](ExperimentConfig& c, std::string_view k, std::string_view v,
                       std::string_view w) { c.*field = as_list(k, v, w); };
    };
    number("gas.gamma", &ExperimentConfig::gamma);
    number("gas.rho_bar", &ExperimentConfig::rho_bar);
    number("damping.mu", &ExperimentConfig::mu);
    number("damping.lambda", &ExperimentConfig::lambda);
    text("profile.name", &ExperimentConfig::profile_name);
    number("profile.epsilon", &ExperimentConfig::epsilon);
    number("profile.M", &ExperimentConfig::M);
    number("profile.M0", &ExperimentConfig::M0);
    text("profile.file", &ExperimentConfig::profile_file);
    number("grid.r_max", &ExperimentConfig::r_max);
    count("grid.n_cells", &ExperimentConfig::n_cells);
    optional_number("grid.x_lo", &ExperimentConfig::x_lo);
    optional_number("grid.x_hi", &ExperimentConfig::x_hi);
    number("run.t_end", &ExperimentConfig::t_end);
    number("run.cfl", &ExperimentConfig::cfl);
    number("run.monitor_cadence", &ExperimentConfig::monitor_cadence);
    optional_number("run.snapshot_cadence", &ExperimentConfig::snapshot_cadence);
    t["run.muscl"] = [](ExperimentConfig& c, std::string_view k, std::string_view v,
                        std::string_view w) { c.muscl = as_bool(k, v, w); };
    number("run.gradient_factor", &ExperimentConfig::gradient_factor);
    list("sweep.lambda", &ExperimentConfig::sweep_lambda);
    list("sweep.mu", &ExperimentConfig::sweep_mu);
    list("sweep.epsilon", &ExperimentConfig::sweep_epsilon);
    text("output.dir", &ExperimentConfig::output_dir);
    optional_number("criterion.t_star", &ExperimentConfig::t_star);
    optional_number("criterion.h0", &ExperimentConfig::h0);
    optional_number("criterion.l0", &ExperimentConfig::l0);
    text("functionals.snapshots", &ExperimentConfig::snapshots_path);
    count("functionals.l_samples", &ExperimentConfig::l_samples);
    count("functionals.q_samples", &ExperimentConfig::q_samples);
    count("burgers.slope_samples", &ExperimentConfig::slope_samples);
    return t;
  }();
  return table;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

void require(bool ok, std::string_view key, std::string_view what) {
  if (!ok) throw ConfigError("invalid value for " + quoted(key) + ": " + std::string(what));
}

}  // namespace

Mode parse_mode(std::string_view name) {
  static const std::pair<std::string_view, Mode> modes[] = {
      {"burgers-lifespan", Mode::BurgersLifespan}, {"burgers-sim", Mode::BurgersSim},
      {"euler-sim", Mode::EulerSim},               {"functionals", Mode::Functionals},
      {"criterion", Mode::Criterion},              {"sweep", Mode::Sweep}};
  for (const auto& [n, m] : modes) {
    if (n == name) return m;
  }
  throw ConfigError("unknown mode " + quoted(name));
}

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::BurgersLifespan: return "burgers-lifespan";
    case Mode::BurgersSim: return "burgers-sim";
    case Mode::EulerSim: return "euler-sim";
    case Mode::Functionals: return "functionals";
    case Mode::Criterion: return "criterion";
    case Mode::Sweep: return "sweep";
  }
  return "unknown";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, setter] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

std::string nearest_key(std::string_view key) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const std::string& k : config_keys()) {
    const std::size_t d = edit_distance(key, k);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value,
                   std::string_view where) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) {
    throw ConfigError("unknown key " + quoted(key) + " (" + std::string(where) +
                      "); nearest valid key: " + quoted(nearest_key(key)));
  }
  it->second(cfg, key, trim(value), where);
}

void parse_config_text(ExperimentConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("syntax error at " + where + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("syntax error at " + where + ": expected 'key = value'");
    }
    apply_setting(cfg, key, value, where);
  }
}

void validate_config(const ExperimentConfig& c) {
  require(c.gamma > 1.0 && std::isfinite(c.gamma), "gas.gamma", "must be > 1");
  require(c.rho_bar > 0.0 && std::isfinite(c.rho_bar), "gas.rho_bar", "must be > 0");
  require(c.mu >= 0.0 && std::isfinite(c.mu), "damping.mu", "must be >= 0");
  require(c.lambda >= 0.0 && std::isfinite(c.lambda), "damping.lambda", "must be >= 0");
  require(c.epsilon >= 0.0 && std::isfinite(c.epsilon), "profile.epsilon", "must be >= 0");
  require(c.M > 0.0 && std::isfinite(c.M), "profile.M", "must be > 0");
  require(c.M0 >= 0.0 && c.M0 < c.M, "profile.M0", "must satisfy 0 <= M0 < M");
  require(c.r_max >= 0.0 && std::isfinite(c.r_max), "grid.r_max", "must be >= 0");
  require(c.t_end > 0.0 && std::isfinite(c.t_end), "run.t_end", "must be > 0");
  require(c.monitor_cadence >= 0.0, "run.monitor_cadence", "must be >= 0");
  require(!c.snapshot_cadence || *c.snapshot_cadence >= 0.0, "run.snapshot_cadence",
          "must be >= 0");
  require(c.gradient_factor > 1.0, "run.gradient_factor", "must be > 1");
  require(c.l_samples >= 2, "functionals.l_samples", "must be >= 2");
  require(c.q_samples >= 1, "functionals.q_samples", "must be >= 1");
  require(c.slope_samples >= 16, "burgers.slope_samples", "must be >= 16");
  require(!c.t_star || *c.t_star > 0.0, "criterion.t_star", "must be > 0");
  require(!c.l0 || *c.l0 >= 0.0, "criterion.l0", "must be >= 0");
  for (double v : c.sweep_lambda) require(v >= 0.0, "sweep.lambda", "entries must be >= 0");
  for (double v : c.sweep_mu) require(v >= 0.0, "sweep.mu", "entries must be >= 0");
  for (double v : c.sweep_epsilon) require(v >= 0.0, "sweep.epsilon", "entries must be >= 0");

  const bool burgers = c.mode == Mode::BurgersLifespan || c.mode == Mode::BurgersSim;
  if (burgers) {
    require(c.profile_name == "bump" || c.profile_name == "ramp", "profile.name",
            "burgers modes accept bump or ramp");
    require(c.epsilon > 0.0, "profile.epsilon", "must be > 0 for burgers modes");
    for (double v : c.sweep_epsilon) {
      require(v > 0.0, "sweep.epsilon", "entries must be > 0 for burgers modes");
    }
    if (c.mode == Mode::BurgersSim) {
      require(c.n_cells >= 16, "grid.n_cells", "must be >= 16");
      require(c.cfl > 0.0 && c.cfl <= 0.9, "run.cfl", "must lie in (0, 0.9]");
      require(c.x_lo.has_value() == c.x_hi.has_value(), "grid.x_lo",
              "grid.x_lo and grid.x_hi must be given together");
      require(!c.x_lo || *c.x_lo < *c.x_hi, "grid.x_hi", "must exceed grid.x_lo");
    }
  } else {
    require(c.profile_name == "bump" || c.profile_name == "shell" ||
                c.profile_name == "outgoing-shell" || c.profile_name == "file",
            "profile.name", "must be bump, shell, outgoing-shell or file");
    require(c.profile_name != "file" || !c.profile_file.empty(), "profile.file",
            "required when profile.name = file");
    require(c.profile_name == "file" || c.profile_file.empty(), "profile.name",
            "must be file when profile.file is set");
    require(c.n_cells >= 32, "grid.n_cells", "must be >= 32");
    require(c.cfl > 0.0 && c.cfl <= 1.0, "run.cfl", "must lie in (0, 1]");
  }
}

ExperimentConfig parse_config(std::string_view text, Mode mode) {
  ExperimentConfig cfg;
  cfg.mode = mode;
  parse_config_text(cfg, text);
  validate_config(cfg);
  return cfg;
}

}  // namespace critdamp
