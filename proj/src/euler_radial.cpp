#include "critdamp/euler_radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "critdamp/csv.hpp"
#include "critdamp/errors.hpp"
#include "critdamp/numerics.hpp"

namespace critdamp {
namespace radial {

namespace {

constexpr double kVacuumFraction = 1e-6;
constexpr double kMinTimeStep = 1e-10;

// Bump on (lo, hi): exp(-1 / (1 - s^2)), s = (2r - lo - hi) / (hi - lo).
double annulus_bump(double r, double lo, double hi) {
  const double s = (2.0 * r - lo - hi) / (hi - lo);
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

struct Thermo {
  double c;      // sound speed
  double dp;     // p - p_bar
};

Thermo thermo(const GasModel& g, double excess) {
  const double lg = std::log1p(excess / g.rho_bar());
  return Thermo{std::exp(0.5 * (g.gamma() - 1.0) * lg),
                g.background_pressure() * std::expm1(g.gamma() * lg)};
}

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

// Conservative rates on cells [0, k); cells from k on are the background.
class RateEvaluator {
 public:
  RateEvaluator(const GasModel& g, const RadialGrid& grid) : g_(g), grid_(grid) {}

  // Returns false when a non-positive density is met.
  bool operator()(const std::vector<double>& d, const std::vector<double>& m,
                  std::size_t k, bool muscl, std::vector<double>& dd,
                  std::vector<double>& dm) {
    const double rho_bar = g_.rho_bar();
    // Extended primitive arrays; index j holds cell j - 1.
    ext_d_.assign(k + 2, 0.0);
    ext_u_.assign(k + 2, 0.0);
    cell_dp_.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const double rho = rho_bar + d[i];
      if (!(rho > 0.0)) return false;
      ext_d_[i + 1] = d[i];
      ext_u_[i + 1] = m[i] / rho;
      cell_dp_[i] = thermo(g_, d[i]).dp;
    }
    if (k > 0) {
      ext_d_[0] = ext_d_[1];
      ext_u_[0] = -ext_u_[1];
    }

    // Face states: left_[f], right_[f] for faces f = 0..k.
    face_l_d_.assign(k + 1, 0.0);
    face_l_u_.assign(k + 1, 0.0);
    face_r_d_.assign(k + 1, 0.0);
    face_r_u_.assign(k + 1, 0.0);
    if (!muscl) {
      for (std::size_t f = 0; f <= k; ++f) {
        face_l_d_[f] = ext_d_[f];
        face_l_u_[f] = ext_u_[f];
        face_r_d_[f] = ext_d_[f + 1];
        face_r_u_[f] = ext_u_[f + 1];
      }
    } else {
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + 1;
        const double sd = minmod(ext_d_[j] - ext_d_[j - 1], ext_d_[j + 1] - ext_d_[j]);
        const double su = minmod(ext_u_[j] - ext_u_[j - 1], ext_u_[j + 1] - ext_u_[j]);
        face_r_d_[i] = ext_d_[j] - 0.5 * sd;
        face_r_u_[i] = ext_u_[j] - 0.5 * su;
        face_l_d_[i + 1] = ext_d_[j] + 0.5 * sd;
        face_l_u_[i + 1] = ext_u_[j] + 0.5 * su;
      }
      face_l_d_[0] = face_r_d_[0];
      face_l_u_[0] = -face_r_u_[0];
      face_r_d_[k] = 0.0;
      face_r_u_[k] = 0.0;
    }

    flux_mass_.assign(k + 1, 0.0);
    flux_mom_.assign(k + 1, 0.0);
    for (std::size_t f = 0; f <= k; ++f) {
      const double dl = face_l_d_[f];
      const double dr = face_r_d_[f];
      const double ul = face_l_u_[f];
      const double ur = face_r_u_[f];
      if (dl == 0.0 && dr == 0.0 && ul == 0.0 && ur == 0.0) continue;
      const double rho_l = rho_bar + dl;
      const double rho_r = rho_bar + dr;
      if (!(rho_l > 0.0) || !(rho_r > 0.0)) return false;
      const Thermo tl = thermo(g_, dl);
      const Thermo tr = thermo(g_, dr);
      const double ml = rho_l * ul;
      const double mr = rho_r * ur;
      const double a = std::max(std::abs(ul) + tl.c, std::abs(ur) + tr.c);
      const double fm = 0.5 * (ml + mr) - 0.5 * a * (dr - dl);
      const double fp = 0.5 * (ml * ul + tl.dp + mr * ur + tr.dp) - 0.5 * a * (mr - ml);
      const double area = grid_.area(f);
      flux_mass_[f] = area * fm;
      flux_mom_[f] = area * fp;
    }

    dd.assign(k, 0.0);
    dm.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const double inv_v = 1.0 / grid_.volume(i);
      dd[i] = -(flux_mass_[i + 1] - flux_mass_[i]) * inv_v;
      dm[i] = (-(flux_mom_[i + 1] - flux_mom_[i]) +
               cell_dp_[i] * (grid_.area(i + 1) - grid_.area(i))) *
              inv_v;
    }
    return true;
  }

 private:
  const GasModel& g_;
  const RadialGrid& grid_;
  std::vector<double> ext_d_, ext_u_, cell_dp_;
  std::vector<double> face_l_d_, face_l_u_, face_r_d_, face_r_u_;
  std::vector<double> flux_mass_, flux_mom_;
};

}  // namespace

RadialGrid::RadialGrid(double r_max, std::size_t n_cells) : r_max_(r_max), n_(n_cells) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) {
    throw ConfigError("grid.r_max: must be > 0");
  }
  if (n_cells < 32) throw ConfigError("grid.n_cells: must be >= 32");
  dr_ = r_max / static_cast<double>(n_cells);
  std::vector<double> volume(n_);
  std::vector<double> moment3(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double r = center(i);
    volume[i] = dr_ * (r * r + dr_ * dr_ / 12.0);
    moment3[i] = dr_ * r * (r * r + dr_ * dr_ / 4.0);
  }
  volume_ = std::make_shared<const std::vector<double>>(std::move(volume));
  moment3_ = std::make_shared<const std::vector<double>>(std::move(moment3));
}

InitialProfile bump_profile(double epsilon, double M, double M0) {
  InitialProfile p;
  p.name = "bump";
  p.epsilon = epsilon;
  p.M = M;
  p.M0 = M0;
  p.rho0 = [M](double r) {
    const double s = r / M;
    if (s >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
  };
  p.u0 = [](double) { return 0.0; };
  return p;
}

InitialProfile shell_profile(double epsilon, double M, double M0) {
  InitialProfile p;
  p.name = "shell";
  p.epsilon = epsilon;
  p.M = M;
  p.M0 = M0;
  p.rho0 = [M, M0](double r) { return annulus_bump(r, M0, M); };
  p.u0 = [](double) { return 0.0; };
  return p;
}

InitialProfile outgoing_shell_profile(double epsilon, double M, double M0,
                                      double rho_bar) {
  InitialProfile p;
  p.name = "outgoing-shell";
  p.epsilon = epsilon;
  p.M = M;
  p.M0 = M0;
  p.rho0 = [M, M0, rho_bar](double r) { return rho_bar * annulus_bump(r, M0, M); };
  p.u0 = [M, M0](double r) { return annulus_bump(r, M0, M); };
  return p;
}

InitialProfile sampled_profile(std::vector<double> r, std::vector<double> rho0,
                               std::vector<double> u0, double epsilon, double M,
                               double M0) {
  if (r.size() < 2 || rho0.size() != r.size() || u0.size() != r.size()) {
    throw ConfigError("profile.file: need at least two rows of r, rho0, u0");
  }
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1])) throw ConfigError("profile.file: r must increase");
  }
  auto interp = [r](const std::vector<double>& v) {
    return [r, v](double x) {
      if (x < r.front() || x > r.back()) return 0.0;
      const auto it = std::upper_bound(r.begin(), r.end(), x);
      if (it == r.end()) return v.back();
      const std::size_t hi = static_cast<std::size_t>(it - r.begin());
      const std::size_t lo = hi - 1;
      const double w = (x - r[lo]) / (r[hi] - r[lo]);
      return (1.0 - w) * v[lo] + w * v[hi];
    };
  };
  InitialProfile p;
  p.name = "file";
  p.epsilon = epsilon;
  p.M = M;
  p.M0 = M0;
  p.rho0 = interp(rho0);
  p.u0 = interp(u0);
  return p;
}

std::vector<double> RadialState::densities() const {
  std::vector<double> out(rho_excess.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = density(i);
  return out;
}

std::vector<double> RadialState::velocities() const {
  std::vector<double> out(mom.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = velocity(i);
  return out;
}

std::size_t RadialState::active_cells() const {
  const double cells = std::round(support_radius / grid.dr());
  return std::min(grid.n_cells(), static_cast<std::size_t>(std::max(0.0, cells)));
}

void RadialState::update_support() {
  std::size_t last = 0;
  for (std::size_t i = rho_excess.size(); i > 0; --i) {
    if (rho_excess[i - 1] != 0.0 || mom[i - 1] != 0.0) {
      last = i;
      break;
    }
  }
  support_radius = grid.face(last);
}

RadialState init_state(const GasModel& g, const InitialProfile& prof,
                       const RadialGrid& grid) {
  if (!(prof.M > 0.0) || !(prof.M0 >= 0.0) || !(prof.M0 < prof.M)) {
    throw ConfigError("profile: need 0 <= M0 < M");
  }
  RadialState s{grid, g.rho_bar(), 0.0, {}, {}};
  const std::size_t n = grid.n_cells();
  s.rho_excess.assign(n, 0.0);
  s.mom.assign(n, 0.0);
  if (prof.epsilon != 0.0) {
    const numerics::GaussRule rule = numerics::gauss_legendre(8);
    const double half = 0.5 * grid.dr();
    for (std::size_t i = 0; i < n; ++i) {
      if (grid.face(i) >= prof.M) break;
      const double rc = grid.center(i);
      double mass = 0.0;
      double momentum = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double r = rc + half * rule.nodes[q];
        const double w = half * rule.weights[q] * r * r;
        const double excess = prof.epsilon * prof.rho0(r);
        mass += w * excess;
        momentum += w * (g.rho_bar() + excess) * prof.epsilon * prof.u0(r);
      }
      s.rho_excess[i] = mass / grid.volume(i);
      s.mom[i] = momentum / grid.volume(i);
      if (!(s.density(i) > 0.0)) {
        throw ConfigError("profile: initial density is not positive at r = " +
                          format_double(rc));
      }
    }
  }
  s.update_support();
  return s;
}

RadialState state_from_cells(const RadialGrid& grid, double rho_bar, double t,
                             const std::vector<double>& rho,
                             const std::vector<double>& mom) {
  if (rho.size() != grid.n_cells() || mom.size() != grid.n_cells()) {
    throw ConfigError("state: cell count does not match the grid");
  }
  RadialState s{grid, rho_bar, t, {}, {}};
  s.rho_excess.resize(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0)) throw ConfigError("state: non-positive density");
    s.rho_excess[i] = rho[i] - rho_bar;
  }
  s.mom = mom;
  s.update_support();
  return s;
}

double max_wave_speed(const GasModel& g, const RadialState& s) {
  double speed = 1.0;
  const std::size_t k = s.active_cells();
  for (std::size_t i = 0; i < k; ++i) {
    const double rho = s.density(i);
    if (!(rho > 0.0)) return std::numeric_limits<double>::infinity();
    speed = std::max(speed, std::abs(s.mom[i] / rho) + thermo(g, s.rho_excess[i]).c);
  }
  return speed;
}

double cfl_time_step(const GasModel& g, const RadialState& s, double cfl) {
  return cfl * s.grid.dr() / max_wave_speed(g, s);
}

double max_velocity_gradient(const RadialState& s) {
  const std::size_t k = std::min(s.grid.n_cells(), s.active_cells() + 1);
  double jump = 0.0;
  double prev = k > 0 ? s.velocity(0) : 0.0;
  for (std::size_t i = 1; i < k; ++i) {
    const double u = s.velocity(i);
    jump = std::max(jump, std::abs(u - prev));
    prev = u;
  }
  return jump / s.grid.dr();
}

double max_sound_speed_gradient(const GasModel& g, const RadialState& s) {
  const std::size_t k = std::min(s.grid.n_cells(), s.active_cells() + 1);
  double jump = 0.0;
  double prev = k > 0 ? thermo(g, s.rho_excess[0]).c : 1.0;
  for (std::size_t i = 1; i < k; ++i) {
    const double c = thermo(g, s.rho_excess[i]).c;
    jump = std::max(jump, std::abs(c - prev));
    prev = c;
  }
  return jump / s.grid.dr();
}

namespace {

// Advances states in place, reusing its buffers across steps.
class Stepper {
 public:
  Stepper(const GasModel& g, const DampingLaw& d, const RadialGrid& grid)
      : g_(g), d_(d), grid_(grid), rates_(g, grid) {}

  // On breakdown `s` is left unchanged.
  std::optional<NumericalBreakdown> advance(RadialState& s, const StepOptions& opts,
                                            double& dt_out) {
    if (!(opts.cfl > 0.0 && opts.cfl <= 1.0)) {
      throw ConfigError("run.cfl: must lie in (0, 1]");
    }
    const std::size_t n = grid_.n_cells();
    double dt = 0.0;
    if (opts.fixed_dt) {
      dt = *opts.fixed_dt;
      if (!(dt > 0.0)) throw ConfigError("step: fixed_dt must be > 0");
    } else {
      const double speed = max_wave_speed(g_, s);
      if (!std::isfinite(speed)) {
        return NumericalBreakdown{s.t, BreakdownCause::NegativeDensity};
      }
      dt = opts.cfl * grid_.dr() / speed;
      if (dt <= kMinTimeStep) return NumericalBreakdown{s.t, BreakdownCause::CflCollapse};
    }
    double t_new = s.t + dt;
    if (opts.stop_time && t_new >= *opts.stop_time) {
      t_new = *opts.stop_time;
      dt = t_new - s.t;
    }
    dt_out = dt;

    // Each stage spreads the perturbation by at most two cells.
    const std::size_t k = std::min(n, s.active_cells() + 4);
    const auto broken = [&](BreakdownCause cause) {
      return std::optional<NumericalBreakdown>(NumericalBreakdown{s.t, cause});
    };
    if (!rates_(s.rho_excess, s.mom, k, opts.muscl, dd_, dm_)) {
      return broken(BreakdownCause::NegativeDensity);
    }
    d1_.resize(k);
    m1_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      d1_[i] = s.rho_excess[i] + dt * dd_[i];
      m1_[i] = s.mom[i] + dt * dm_[i];
    }
    if (opts.muscl) {
      if (!rates_(d1_, m1_, k, true, dd_, dm_)) {
        return broken(BreakdownCause::NegativeDensity);
      }
      for (std::size_t i = 0; i < k; ++i) {
        d1_[i] = 0.5 * (s.rho_excess[i] + d1_[i] + dt * dd_[i]);
        m1_[i] = 0.5 * (s.mom[i] + m1_[i] + dt * dm_[i]);
      }
    }

    const double factor = std::exp(d_.log_beta(s.t) - d_.log_beta(t_new));
    const double vacuum = kVacuumFraction * s.rho_bar;
    std::size_t last = 0;
    for (std::size_t i = 0; i < k; ++i) {
      m1_[i] *= factor;
      if (!std::isfinite(d1_[i]) || !std::isfinite(m1_[i])) {
        return broken(BreakdownCause::NonFinite);
      }
      if (s.rho_bar + d1_[i] <= vacuum) return broken(BreakdownCause::NegativeDensity);
      if (d1_[i] != 0.0 || m1_[i] != 0.0) last = i + 1;
    }
    std::copy(d1_.begin(), d1_.end(), s.rho_excess.begin());
    std::copy(m1_.begin(), m1_.end(), s.mom.begin());
    s.t = t_new;
    s.support_radius = grid_.face(last);
    return std::nullopt;
  }

 private:
  const GasModel& g_;
  const DampingLaw& d_;
  const RadialGrid& grid_;
  RateEvaluator rates_;
  std::vector<double> dd_, dm_, d1_, m1_;
};

}  // namespace

StepResult step(const GasModel& g, const DampingLaw& d, const RadialState& s,
                const StepOptions& opts) {
  StepResult out{s, 0.0, std::nullopt};
  Stepper stepper(g, d, s.grid);
  out.breakdown = stepper.advance(out.state, opts, out.dt);
  return out;
}

StepResult step(const GasModel& g, const DampingLaw& d, const RadialState& s,
                double cfl) {
  StepOptions opts;
  opts.cfl = cfl;
  return step(g, d, s, opts);
}

void validate_run(const GasModel& g, const RadialState& initial,
                  const InitialProfile& prof, double t_end, double cfl) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("run.t_end: must be > 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("run.cfl: must lie in (0, 1]");
  const double speed = max_wave_speed(g, initial);
  const double reach = prof.M + t_end * speed;
  if (!(reach < initial.grid.r_max())) {
    throw ConfigError("grid.r_max: must exceed M + t_end * max(|u| + c) = " +
                      format_double(reach));
  }
}

RunResult run(const GasModel& g, const DampingLaw& d, const InitialProfile& prof,
              const RadialGrid& grid, const RunOptions& opts,
              const std::vector<Monitor>& monitors) {
  if (opts.monitor_cadence < 0.0) throw ConfigError("run.monitor_cadence: must be >= 0");
  if (opts.snapshot_cadence < 0.0) throw ConfigError("run.snapshot_cadence: must be >= 0");
  if (!(opts.gradient_factor > 1.0)) throw ConfigError("run.gradient_factor: must be > 1");
  RadialState state = init_state(g, prof, grid);
  validate_run(g, state, prof, opts.t_end, opts.cfl);

  RunResult result{};
  result.verdict = Global{opts.t_end};
  for (const Monitor& m : monitors) result.series.push_back(FunctionalSeries{m.name, {}});

  auto sample = [&](const RadialState& st) {
    for (std::size_t j = 0; j < monitors.size(); ++j) {
      result.series[j].push(st.t, monitors[j].eval(st));
    }
    result.dt_series.push(st.t, cfl_time_step(g, st, opts.cfl));
  };

  double reference = max_velocity_gradient(state);
  if (reference == 0.0) reference = max_sound_speed_gradient(g, state);
  result.reference_gradient = reference;
  const double threshold =
      reference > 0.0 ? opts.gradient_factor * reference
                      : std::numeric_limits<double>::infinity();

  sample(state);
  if (opts.snapshot_cadence > 0.0) result.snapshots.push_back(state);

  // Output times are k * cadence, computed from counters to avoid drift.
  std::size_t monitor_count = 1;
  std::size_t snapshot_count = 1;
  auto next_time = [&]() {
    double next = opts.t_end;
    if (opts.monitor_cadence > 0.0) {
      next = std::min(next, static_cast<double>(monitor_count) * opts.monitor_cadence);
    }
    if (opts.snapshot_cadence > 0.0) {
      next = std::min(next, static_cast<double>(snapshot_count) * opts.snapshot_cadence);
    }
    return next;
  };

  StepOptions sopts;
  sopts.cfl = opts.cfl;
  sopts.muscl = opts.muscl;
  Stepper stepper(g, d, state.grid);
  while (state.t < opts.t_end) {
    sopts.stop_time = next_time();
    double dt = 0.0;
    if (const auto broken = stepper.advance(state, sopts, dt)) {
      result.verdict = *broken;
      return result;
    }
    ++result.steps;

    const bool at_end = state.t >= opts.t_end;
    bool monitor_due = opts.monitor_cadence == 0.0 || at_end;
    if (opts.monitor_cadence > 0.0 &&
        state.t >= static_cast<double>(monitor_count) * opts.monitor_cadence) {
      monitor_due = true;
      while (static_cast<double>(monitor_count) * opts.monitor_cadence <= state.t) {
        ++monitor_count;
      }
    }
    const bool steep = max_velocity_gradient(state) >= threshold;
    if (opts.snapshot_cadence > 0.0) {
      const bool due =
          state.t >= static_cast<double>(snapshot_count) * opts.snapshot_cadence;
      while (static_cast<double>(snapshot_count) * opts.snapshot_cadence <= state.t) {
        ++snapshot_count;
      }
      // The final state is always kept.
      if (due || at_end || steep) result.snapshots.push_back(state);
    }
    if (monitor_due || steep) sample(state);
    if (steep) {
      result.verdict = NumericalBreakdown{state.t, BreakdownCause::GradientThreshold};
      return result;
    }
    if (monitor_due && opts.stop && opts.stop(state)) {
      result.verdict = Global{state.t};
      return result;
    }
  }
  return result;
}

}  // namespace radial
}  // namespace critdamp
