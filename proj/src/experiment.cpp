#include "critdamp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "critdamp/csv.hpp"
#include "critdamp/damping_law.hpp"
#include "critdamp/errors.hpp"
#include "critdamp/functionals.hpp"

namespace critdamp {
namespace experiment {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path prepare_dir(const ExperimentConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

std::string fmt(double v) { return format_double(v); }

void write_kv(std::ostream& out, std::string_view key, std::string_view value) {
  out << key << " = " << value << '\n';
}

void write_common_parameters(std::ostream& out, const ExperimentConfig& cfg) {
  write_kv(out, "mode", mode_name(cfg.mode));
  write_kv(out, "gas.gamma", fmt(cfg.gamma));
  write_kv(out, "gas.rho_bar", fmt(cfg.rho_bar));
  write_kv(out, "damping.mu", fmt(cfg.mu));
  write_kv(out, "damping.lambda", fmt(cfg.lambda));
  write_kv(out, "profile.name", cfg.profile_name);
  write_kv(out, "profile.epsilon", fmt(cfg.epsilon));
  write_kv(out, "profile.M", fmt(cfg.M));
  write_kv(out, "profile.M0", fmt(cfg.M0));
}

void write_run_parameters(std::ostream& out, const ExperimentConfig& cfg) {
  write_kv(out, "grid.n_cells", std::to_string(cfg.n_cells));
  write_kv(out, "run.t_end", fmt(cfg.t_end));
  write_kv(out, "run.cfl", fmt(cfg.cfl));
  write_kv(out, "run.monitor_cadence", fmt(cfg.monitor_cadence));
  write_kv(out, "run.muscl", cfg.muscl ? "true" : "false");
  write_kv(out, "run.gradient_factor", fmt(cfg.gradient_factor));
}

double snapshot_cadence(const ExperimentConfig& cfg) {
  return cfg.snapshot_cadence.value_or(cfg.monitor_cadence);
}

// ---- burgers -------------------------------------------------------------

void burgers_lifespan(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_dir(cfg);
  const burgers1d::Profile w0 = make_burgers_profile(cfg);
  const double m = burgers1d::max_negative_slope(w0, cfg.slope_samples);
  std::vector<SweepRow> rows = sweep_grid(cfg);
  run_parallel(rows, thread_count(), [m](const SweepRow& r) {
    return burgers1d::classify_lifespan(DampingLaw(r.mu, r.lambda), r.epsilon, m);
  });
  std::ofstream sweep = open_output(dir / "sweep.csv");
  write_sweep_csv(sweep, rows);
  if (rows.size() == 1) {
    std::ofstream v = open_output(dir / "verdict.txt");
    write_kv(v, "verdict", to_string(rows.front().verdict));
    write_common_parameters(v, cfg);
    write_kv(v, "max_negative_slope", fmt(m));
  }
}

void write_burgers_snapshots(std::ostream& out, const std::vector<burgers1d::FvSnapshot>& snaps) {
  out << "t,x,w\n";
  for (const auto& s : snaps) {
    const std::string t = fmt(s.t);
    out << "# t=" << t << '\n';
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << t << ',' << fmt(s.x[i]) << ',' << fmt(s.w[i]) << '\n';
    }
  }
}

std::vector<double> output_times(double cadence, double t_end) {
  std::vector<double> times{0.0};
  if (cadence > 0.0) {
    for (std::size_t k = 1;; ++k) {
      const double t = static_cast<double>(k) * cadence;
      if (t >= t_end) break;
      times.push_back(t);
    }
  }
  times.push_back(t_end);
  return times;
}

void burgers_sim(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_dir(cfg);
  const DampingLaw d(cfg.mu, cfg.lambda);
  const burgers1d::Problem p(make_burgers_profile(cfg), cfg.epsilon, d);
  burgers1d::FvOptions o;
  o.n_cells = cfg.n_cells;
  o.t_end = cfg.t_end;
  o.cfl = cfg.cfl;
  o.x_lo = cfg.x_lo;
  o.x_hi = cfg.x_hi;
  o.gradient_factor = cfg.gradient_factor;
  o.snapshot_times = output_times(cfg.monitor_cadence, cfg.t_end);
  const burgers1d::FvResult r = burgers1d::simulate_fv(p, o);

  std::ofstream series = open_output(dir / "series.csv");
  series << "t,Q,Q_beta,max_abs_w,max_dw_dx\n";
  for (const auto& s : r.snapshots) {
    const double q = s.total();
    series << fmt(s.t) << ',' << fmt(q) << ',' << fmt(q * d.beta(s.t)) << ','
           << fmt(s.max_abs()) << ',' << fmt(s.max_gradient()) << '\n';
  }
  std::ofstream snaps = open_output(dir / "snapshots.csv");
  write_burgers_snapshots(snaps, r.snapshots);
  std::ofstream v = open_output(dir / "verdict.txt");
  write_kv(v, "verdict", to_string(r.verdict));
  write_common_parameters(v, cfg);
  write_run_parameters(v, cfg);
  write_kv(v, "exact_lifespan", to_string(burgers1d::classify_lifespan(p)));
  write_kv(v, "steps", std::to_string(r.steps));
}

// ---- euler ---------------------------------------------------------------

void euler_sim(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_dir(cfg);
  const GasModel g(cfg.gamma, cfg.rho_bar);
  const DampingLaw d(cfg.mu, cfg.lambda);
  const radial::InitialProfile prof = make_radial_profile(cfg, g);
  const radial::RadialGrid grid = make_radial_grid(cfg, g, prof);
  radial::RunOptions o;
  o.t_end = cfg.t_end;
  o.cfl = cfg.cfl;
  o.muscl = cfg.muscl;
  o.monitor_cadence = cfg.monitor_cadence;
  o.snapshot_cadence = snapshot_cadence(cfg);
  o.gradient_factor = cfg.gradient_factor;
  const radial::RunResult r =
      radial::run(g, d, prof, grid, o, functionals::standard_monitors(g, d));

  std::ofstream series = open_output(dir / "series.csv");
  write_radial_series(series, r.series, r.dt_series);
  if (!r.snapshots.empty()) {
    std::ofstream snaps = open_output(dir / "snapshots.csv");
    write_radial_snapshots(snaps, r.snapshots);
  }
  std::ofstream v = open_output(dir / "verdict.txt");
  write_kv(v, "verdict", to_string(r.verdict));
  write_common_parameters(v, cfg);
  write_kv(v, "grid.r_max", fmt(grid.r_max()));
  write_run_parameters(v, cfg);
  write_kv(v, "reference_gradient", fmt(r.reference_gradient));
  write_kv(v, "steps", std::to_string(r.steps));
}

void sweep(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_dir(cfg);
  std::vector<SweepRow> rows = sweep_grid(cfg);
  run_parallel(rows, thread_count(), [&cfg](const SweepRow& row) {
    ExperimentConfig c = cfg;
    c.lambda = row.lambda;
    c.mu = row.mu;
    c.epsilon = row.epsilon;
    const GasModel g(c.gamma, c.rho_bar);
    const DampingLaw d(c.mu, c.lambda);
    const radial::InitialProfile prof = make_radial_profile(c, g);
    const radial::RadialGrid grid = make_radial_grid(c, g, prof);
    radial::RunOptions o;
    o.t_end = c.t_end;
    o.cfl = c.cfl;
    o.muscl = c.muscl;
    o.monitor_cadence = c.monitor_cadence;
    o.gradient_factor = c.gradient_factor;
    return radial::run(g, d, prof, grid, o, {}).verdict;
  });
  std::ofstream out = open_output(dir / "sweep.csv");
  write_sweep_csv(out, rows);
}

// ---- functionals ---------------------------------------------------------

void functionals_mode(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_dir(cfg);
  const GasModel g(cfg.gamma, cfg.rho_bar);
  const DampingLaw d(cfg.mu, cfg.lambda);
  const radial::InitialProfile prof = make_radial_profile(cfg, g);
  const radial::RadialGrid grid = make_radial_grid(cfg, g, prof);
  const fs::path source =
      cfg.snapshots_path.empty() ? dir / "snapshots.csv" : fs::path(cfg.snapshots_path);
  std::ifstream in(source, std::ios::binary);
  if (!in) throw IoError("cannot read " + source.string());
  const std::vector<radial::RadialState> states = read_radial_snapshots(in, grid, g.rho_bar());
  if (states.empty()) throw ConfigError("functionals: no snapshots in " + source.string());

  std::vector<radial::Monitor> monitors = functionals::standard_monitors(g, d);
  std::vector<FunctionalSeries> series;
  for (const auto& m : monitors) series.push_back(FunctionalSeries{m.name, {}});
  FunctionalSeries dt{"dt", {}};
  for (const auto& s : states) {
    for (std::size_t j = 0; j < monitors.size(); ++j) series[j].push(s.t, monitors[j].eval(s));
    dt.push(s.t, radial::cfl_time_step(g, s, cfg.cfl));
  }
  {
    std::ofstream out = open_output(dir / "functionals_series.csv");
    write_radial_series(out, series, dt);
  }

  std::vector<functionals::PSlice> slices;
  {
    std::ofstream out = open_output(dir / "P.csv");
    out << "t,l,P,G\n";
    for (const auto& s : states) {
      functionals::PSlice slice = functionals::sample_P(s, cfg.M0, cfg.M, cfg.l_samples);
      for (std::size_t j = 0; j < slice.l.size(); ++j) {
        out << fmt(s.t) << ',' << fmt(slice.l[j]) << ',' << fmt(slice.values[j]) << ','
            << fmt(functionals::G(g, s, slice.l[j])) << '\n';
      }
      slices.push_back(std::move(slice));
    }
  }

  std::ofstream report = open_output(dir / "functionals.txt");
  const functionals::QHypothesisReport q =
      functionals::check_q_hypotheses(prof, g, cfg.q_samples);
  write_kv(report, "q.samples", std::to_string(q.samples));
  write_kv(report, "q.min_q0", fmt(q.min_q0));
  write_kv(report, "q.min_q1", fmt(q.min_q1));
  write_kv(report, "q.holds", q.holds ? "true" : "false");
  const functionals::PSignReport ps =
      functionals::check_P_sign(states, cfg.M0, cfg.M, cfg.l_samples);
  write_kv(report, "P_sign.min", fmt(ps.min_value));
  write_kv(report, "P_sign.at_t", fmt(ps.at_t));
  write_kv(report, "P_sign.at_l", fmt(ps.at_l));
  write_kv(report, "P_sign.tol_P", fmt(ps.tol_P));
  write_kv(report, "P_sign.holds", ps.holds ? "true" : "false");

  // F needs a uniform time grid from t = 0; the final sample of a run that
  // stopped early is dropped when it falls off the grid.
  std::vector<functionals::PSlice> uniform = slices;
  if (uniform.size() >= 4) {
    const double h = uniform[1].t - uniform[0].t;
    const double last = uniform.back().t - uniform[uniform.size() - 2].t;
    if (std::abs(last - h) > 1e-9 * std::max(1.0, uniform.back().t)) uniform.pop_back();
  }
  try {
    const functionals::FSeries f = functionals::compute_F(uniform);
    const FunctionalSeries second = functionals::F_second_difference(f.F);
    std::ofstream out = open_output(dir / "F.csv");
    out << "t,F,F_inner,F_second_difference\n";
    for (std::size_t k = 0; k < f.F.samples.size(); ++k) {
      out << fmt(f.F.samples[k].first) << ',' << fmt(f.F.samples[k].second) << ','
          << fmt(f.inner.samples[k].second) << ',';
      if (k > 0 && k + 1 < f.F.samples.size()) {
        out << fmt(second.samples[k - 1].second);
      } else {
        out << "nan";
      }
      out << '\n';
    }
    write_kv(report, "F.status", "ok");
  } catch (const ConfigError& e) {
    write_kv(report, "F.status", std::string("skipped: ") + e.what());
  }
}

// ---- criterion -----------------------------------------------------------

void criterion_mode(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_dir(cfg);
  const GasModel g(cfg.gamma, cfg.rho_bar);
  const DampingLaw d(cfg.mu, cfg.lambda);
  double H0 = 0.0;
  double L0 = 0.0;
  if (!cfg.h0 || !cfg.l0) {
    const radial::InitialProfile prof = make_radial_profile(cfg, g);
    const radial::RadialGrid grid = make_radial_grid(cfg, g, prof);
    const radial::RadialState s0 = radial::init_state(g, prof, grid);
    H0 = functionals::H(s0);
    L0 = functionals::L(s0);
  }
  if (cfg.h0) H0 = *cfg.h0;
  if (cfg.l0) L0 = *cfg.l0;

  std::string source = "configured";
  double T_star = 0.0;
  if (cfg.t_star) {
    T_star = *cfg.t_star;
  } else if (const auto found = functionals::find_T_star(H0, L0, cfg.M, d, g)) {
    T_star = *found;
    source = "found";
  } else {
    T_star = cfg.t_end;
    source = "run.t_end";
  }
  const functionals::CriterionReport rep =
      functionals::blowup_criterion(H0, L0, cfg.M, d, g, T_star);
  std::ofstream out = open_output(dir / "criterion.txt");
  write_kv(out, "H0", fmt(rep.H0));
  write_kv(out, "L0", fmt(rep.L0));
  write_kv(out, "M", fmt(cfg.M));
  write_kv(out, "T_star", fmt(rep.T_star));
  write_kv(out, "T_star_source", source);
  write_kv(out, "integral_value", fmt(rep.integral_value));
  write_kv(out, "product", fmt(rep.H0 * rep.integral_value));
  write_kv(out, "satisfied", rep.satisfied ? "true" : "false");
}

std::string category(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  if (dynamic_cast<const HypothesisError*>(&e)) return "hypothesis";
  if (dynamic_cast<const StateError*>(&e)) return "state";
  if (dynamic_cast<const IoError*>(&e)) return "io";
  if (dynamic_cast<const std::domain_error*>(&e)) return "domain";
  if (dynamic_cast<const std::invalid_argument*>(&e)) return "input";
  return "internal";
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

burgers1d::Profile make_burgers_profile(const ExperimentConfig& cfg) {
  if (cfg.profile_name == "bump") return burgers1d::bump_profile(cfg.M);
  if (cfg.profile_name == "ramp") return burgers1d::ramp_profile(cfg.M);
  throw ConfigError("invalid value for 'profile.name': burgers modes accept bump or ramp");
}

radial::InitialProfile make_radial_profile(const ExperimentConfig& cfg, const GasModel& g) {
  if (cfg.profile_name == "bump") return radial::bump_profile(cfg.epsilon, cfg.M, cfg.M0);
  if (cfg.profile_name == "shell") return radial::shell_profile(cfg.epsilon, cfg.M, cfg.M0);
  if (cfg.profile_name == "outgoing-shell") {
    return radial::outgoing_shell_profile(cfg.epsilon, cfg.M, cfg.M0, g.rho_bar());
  }
  if (cfg.profile_name == "file") {
    return load_profile_file(cfg.profile_file, cfg.epsilon, cfg.M, cfg.M0);
  }
  throw ConfigError("invalid value for 'profile.name': must be bump, shell, "
                    "outgoing-shell or file");
}

radial::InitialProfile load_profile_file(const fs::path& path, double epsilon, double M,
                                         double M0) {
  std::istringstream in(read_file(path));
  std::vector<double> r, rho0, u0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (line_no == 1 && !f.empty() && f[0].find_first_of("0123456789") == std::string::npos) {
      continue;  // header
    }
    if (f.size() != 3) {
      throw ConfigError("profile.file: line " + std::to_string(line_no) +
                        ": expected r,rho0,u0");
    }
    try {
      r.push_back(parse_double(f[0]));
      rho0.push_back(parse_double(f[1]));
      u0.push_back(parse_double(f[2]));
    } catch (const std::invalid_argument&) {
      throw ConfigError("profile.file: line " + std::to_string(line_no) + ": not a number");
    }
  }
  return radial::sampled_profile(std::move(r), std::move(rho0), std::move(u0), epsilon, M, M0);
}

radial::RadialGrid make_radial_grid(const ExperimentConfig& cfg, const GasModel& g,
                                    const radial::InitialProfile& prof) {
  if (cfg.r_max > 0.0) return radial::RadialGrid(cfg.r_max, cfg.n_cells);
  // Wave speed of the data, measured on a provisional grid over the support.
  const radial::RadialGrid probe(prof.M, std::max<std::size_t>(cfg.n_cells, 256));
  const double speed = radial::max_wave_speed(g, radial::init_state(g, prof, probe));
  return radial::RadialGrid(prof.M + 1.1 * cfg.t_end * speed + 1.0, cfg.n_cells);
}

void write_radial_snapshots(std::ostream& out, const std::vector<radial::RadialState>& states) {
  out << "t,r,rho,mom\n";
  for (const auto& s : states) {
    const std::string t = fmt(s.t);
    out << "# t=" << t << '\n';
    const std::size_t k = std::max<std::size_t>(1, s.active_cells());
    for (std::size_t i = 0; i < k; ++i) {
      out << t << ',' << fmt(s.grid.center(i)) << ',' << fmt(s.density(i)) << ','
          << fmt(s.mom[i]) << '\n';
    }
  }
}

std::vector<radial::RadialState> read_radial_snapshots(std::istream& in,
                                                       const radial::RadialGrid& grid,
                                                       double rho_bar) {
  std::vector<radial::RadialState> out;
  std::vector<double> rho;
  std::vector<double> mom;
  double t = 0.0;
  bool open = false;
  auto flush = [&]() {
    if (open) out.push_back(radial::state_from_cells(grid, rho_bar, t, rho, mom));
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "t,r,rho,mom") continue;
    const std::string where = "snapshots: line " + std::to_string(line_no);
    if (line[0] == '#') {
      const auto eq = line.find("t=");
      if (eq == std::string::npos) throw ConfigError(where + ": expected '# t=<value>'");
      flush();
      t = parse_double(std::string_view(line).substr(eq + 2));
      rho.assign(grid.n_cells(), rho_bar);
      mom.assign(grid.n_cells(), 0.0);
      open = true;
      continue;
    }
    if (!open) throw ConfigError(where + ": row before the first '# t=' line");
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 4) throw ConfigError(where + ": expected t,r,rho,mom");
    const double r = parse_double(f[1]);
    const double cell = std::floor(r / grid.dr());
    if (!(cell >= 0.0) || cell >= static_cast<double>(grid.n_cells())) {
      throw ConfigError(where + ": r outside the configured grid");
    }
    const std::size_t i = static_cast<std::size_t>(cell);
    if (std::abs(grid.center(i) - r) > 1e-9 * grid.dr()) {
      throw ConfigError(where + ": r is not a cell center of the configured grid");
    }
    rho[i] = parse_double(f[2]);
    mom[i] = parse_double(f[3]);
  }
  flush();
  return out;
}

void write_radial_series(std::ostream& out, const std::vector<FunctionalSeries>& series,
                         const FunctionalSeries& dt) {
  out << 't';
  for (const auto& s : series) out << ',' << s.name;
  out << ",dt\n";
  for (std::size_t k = 0; k < dt.samples.size(); ++k) {
    out << fmt(dt.samples[k].first);
    for (const auto& s : series) out << ',' << fmt(s.samples[k].second);
    out << ',' << fmt(dt.samples[k].second) << '\n';
  }
}

std::vector<SweepRow> sweep_grid(const ExperimentConfig& cfg) {
  const auto or_single = [](const std::vector<double>& v, double fallback) {
    return v.empty() ? std::vector<double>{fallback} : v;
  };
  std::vector<SweepRow> rows;
  for (double lam : or_single(cfg.sweep_lambda, cfg.lambda)) {
    for (double mu : or_single(cfg.sweep_mu, cfg.mu)) {
      for (double eps : or_single(cfg.sweep_epsilon, cfg.epsilon)) {
        rows.push_back(SweepRow{lam, mu, eps, Global{}});
      }
    }
  }
  return rows;
}

void run_parallel(std::vector<SweepRow>& rows, std::size_t threads,
                  const std::function<Verdict(const SweepRow&)>& job) {
  std::vector<std::exception_ptr> errors(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        rows[i].verdict = job(rows[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(threads, rows.size()));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::size_t thread_count() {
  if (const char* env = std::getenv("CRITDAMP_THREADS")) {
    try {
      const double v = parse_double(env);
      if (v >= 1.0 && v == std::floor(v)) return static_cast<std::size_t>(v);
    } catch (const std::invalid_argument&) {
    }
    throw ConfigError("CRITDAMP_THREADS: expected a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "lambda,mu,epsilon,verdict,T_or_horizon\n";
  for (const auto& r : rows) {
    std::string verdict = "Global";
    if (is_finite_lifespan(r.verdict)) verdict = "FiniteLifespan";
    if (const auto* b = std::get_if<NumericalBreakdown>(&r.verdict)) {
      verdict = "NumericalBreakdown:" + std::string(to_string(b->cause));
    }
    out << fmt(r.lambda) << ',' << fmt(r.mu) << ',' << fmt(r.epsilon) << ',' << verdict << ','
        << time_field(r.verdict) << '\n';
  }
}

void run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  switch (cfg.mode) {
    case Mode::BurgersLifespan: burgers_lifespan(cfg); return;
    case Mode::BurgersSim: burgers_sim(cfg); return;
    case Mode::EulerSim: euler_sim(cfg); return;
    case Mode::Functionals: functionals_mode(cfg); return;
    case Mode::Criterion: criterion_mode(cfg); return;
    case Mode::Sweep: sweep(cfg); return;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Damped Euler and Burgers experiments", "critdamp"};
  std::string mode;
  std::string config_path;
  app.add_option("mode", mode,
                 "burgers-lifespan | burgers-sim | euler-sim | functionals | criterion | sweep")
      ->required();
  app.add_option("--config", config_path, "key = value configuration file");
  app.allow_extras();
  app.footer("Any configuration key may be overridden with --key value.");
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    ExperimentConfig cfg;
    cfg.mode = parse_mode(mode);
    if (!config_path.empty()) parse_config_text(cfg, read_file(config_path));
    const std::vector<std::string> extras = app.remaining();
    for (std::size_t i = 0; i < extras.size(); ++i) {
      const std::string& flag = extras[i];
      if (flag.rfind("--", 0) != 0) {
        throw ConfigError("unexpected argument '" + flag + "'");
      }
      std::string key = flag.substr(2);
      std::string value;
      if (const auto eq = key.find('='); eq != std::string::npos) {
        value = key.substr(eq + 1);
        key.resize(eq);
      } else {
        if (i + 1 >= extras.size()) throw ConfigError("flag " + flag + " needs a value");
        value = extras[++i];
      }
      apply_setting(cfg, key, value, "flag --" + key);
    }
    run_experiment(cfg);
  } catch (const std::exception& e) {
    err << "error: " << category(e) << ": " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}

}  // namespace experiment
}  // namespace critdamp
