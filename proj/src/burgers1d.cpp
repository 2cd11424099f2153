#include "critdamp/burgers1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "critdamp/errors.hpp"
#include "critdamp/numerics.hpp"

namespace critdamp {
namespace burgers1d {

namespace {

// exp(-1/z) for z > 0, else 0.
double smooth_ramp(double z) { return z > 0.0 ? std::exp(-1.0 / z) : 0.0; }
double smooth_ramp_derivative(double z) {
  return z > 0.0 ? std::exp(-1.0 / z) / (z * z) : 0.0;
}

// Smooth step from 0 (z <= 0) to 1 (z >= 1).
double smooth_step(double z) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  const double a = smooth_ramp(z);
  const double b = smooth_ramp(1.0 - z);
  return a / (a + b);
}

double smooth_step_derivative(double z) {
  if (z <= 0.0 || z >= 1.0) return 0.0;
  const double a = smooth_ramp(z);
  const double b = smooth_ramp(1.0 - z);
  const double da = smooth_ramp_derivative(z);
  const double db = -smooth_ramp_derivative(1.0 - z);
  return (da * b - a * db) / ((a + b) * (a + b));
}

double max_jump(const std::vector<double>& w) {
  double g = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    g = std::max(g, std::abs(w[i + 1] - w[i]));
  }
  return g;
}

FiniteLifespan lifespan_from_log1p(double log1p_t) {
  return FiniteLifespan{std::expm1(log1p_t), log1p_t};
}

}  // namespace

Profile bump_profile(double half_width) {
  if (!(half_width > 0.0)) throw std::domain_error("bump_profile: half_width must be > 0");
  const double m = half_width;
  Profile p;
  p.name = "bump";
  p.x_lo = -m;
  p.x_hi = m;
  p.value = [m](double x) {
    const double s = x / m;
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
  };
  p.derivative = [m](double x) {
    const double s = x / m;
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return std::exp(-1.0 / q) * (-2.0 * s / (q * q)) / m;
  };
  return p;
}

Profile ramp_profile(double half_width) {
  if (!(half_width > 0.0)) throw std::domain_error("ramp_profile: half_width must be > 0");
  const double m = half_width;
  // chi(s) = S(2 (1 - |s|)): one on |s| <= 1/2, zero on |s| >= 1.
  auto chi = [](double s) { return smooth_step(2.0 * (1.0 - std::abs(s))); };
  auto dchi = [](double s) {
    const double sign = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
    return -2.0 * sign * smooth_step_derivative(2.0 * (1.0 - std::abs(s)));
  };
  Profile p;
  p.name = "ramp";
  p.x_lo = -m;
  p.x_hi = m;
  p.value = [m, chi](double x) { return -x * chi(x / m); };
  p.derivative = [m, chi, dchi](double x) {
    const double s = x / m;
    return -chi(s) - s * dchi(s);
  };
  return p;
}

Problem::Problem(Profile w0_in, double epsilon_in, DampingLaw damping_in)
    : w0(std::move(w0_in)), epsilon(epsilon_in), damping(damping_in) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::domain_error("burgers problem: epsilon must be > 0");
  }
  if (!(w0.x_lo < w0.x_hi)) {
    throw std::domain_error("burgers problem: empty profile support");
  }
  if (!w0.value || !w0.derivative) {
    throw std::domain_error("burgers problem: profile callables missing");
  }
}

double max_negative_slope(const Profile& w0, std::size_t samples) {
  if (samples < 3) samples = 3;
  const double h = (w0.x_hi - w0.x_lo) / static_cast<double>(samples - 1);
  double best = 0.0;
  std::size_t best_k = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = w0.x_lo + h * static_cast<double>(k);
    const double v = -w0.derivative(x);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  if (best_k == samples) return 0.0;
  const double a = w0.x_lo + h * (static_cast<double>(best_k) - 1.0);
  const double b = w0.x_lo + h * (static_cast<double>(best_k) + 1.0);
  const auto neg_slope = [&w0](double x) { return -w0.derivative(x); };
  const double x_star = numerics::golden_section_max(
      neg_slope, std::max(a, w0.x_lo), std::min(b, w0.x_hi), 1e-12 * (1.0 + std::abs(b)));
  return std::max(best, neg_slope(x_star));
}

Verdict classify_lifespan(const DampingLaw& damping, double epsilon,
                          double max_slope) {
  const double rate = epsilon * max_slope;
  if (!(rate > 0.0)) return Global{};
  const IntegralLimit limit = damping.beta_integral_limit();
  if (limit.is_finite() && rate * limit.value() <= 1.0) return Global{};

  const double target = 1.0 / rate;
  const double mu = damping.mu();
  const double lambda = damping.lambda();
  if (mu == 0.0) return lifespan_from_log1p(std::log1p(target));
  if (lambda == 1.0) {
    if (mu == 1.0) return lifespan_from_log1p(target);
    const double s = 1.0 - mu;
    return lifespan_from_log1p(std::log1p(s * target) / s);
  }
  if (lambda == 0.0) {
    const double t = -std::log1p(-mu * target) / mu;
    return FiniteLifespan{t, std::log1p(t)};
  }

  // I(T) <= T since beta >= 1, so the root lies above `target`.
  double lo = target;
  double hi = 2.0 * target;
  while (damping.beta_integral(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw std::overflow_error("classify_lifespan: lifespan overflow");
  }
  const auto residual = [&](double t) { return damping.beta_integral(t) - target; };
  const auto slope = [&](double t) { return std::exp(-damping.log_beta(t)); };
  const double t = numerics::find_root_newton(residual, slope, lo, hi, 1e-12, 1e-15);
  return FiniteLifespan{t, std::log1p(t)};
}

Verdict classify_lifespan(const Problem& p) {
  return classify_lifespan(p.damping, p.epsilon, max_negative_slope(p.w0));
}

CharacteristicSolution::CharacteristicSolution(Problem p)
    : problem_(std::move(p)),
      max_slope_(max_negative_slope(problem_.w0)),
      lifespan_(classify_lifespan(problem_.damping, problem_.epsilon, max_slope_)) {}

void CharacteristicSolution::require_smooth(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("characteristic solution: t must be >= 0");
  if (const auto* f = std::get_if<FiniteLifespan>(&lifespan_)) {
    if (t >= f->lifespan) {
      throw StateError("characteristic solution requested at or after the lifespan");
    }
  }
}

double CharacteristicSolution::foot(double t, double x) const {
  require_smooth(t);
  const Profile& w0 = problem_.w0;
  if (x <= w0.x_lo || x >= w0.x_hi) return x;
  const double shift = problem_.epsilon * problem_.damping.beta_integral(t);
  if (shift == 0.0) return x;
  const auto g = [&](double x0) { return x0 + shift * w0.value(x0) - x; };
  const double x0 = numerics::find_root(g, w0.x_lo, w0.x_hi, 1e-12);
  if (!std::isfinite(x0)) {
    throw std::runtime_error("characteristic inversion did not converge");
  }
  return x0;
}

double CharacteristicSolution::eval(double t, double x) const {
  const double x0 = foot(t, x);
  const Profile& w0 = problem_.w0;
  if (x0 <= w0.x_lo || x0 >= w0.x_hi) return 0.0;
  return problem_.epsilon * w0.value(x0) * std::exp(-problem_.damping.log_beta(t));
}

double eval_characteristic(const Problem& p, double t, double x) {
  return CharacteristicSolution(p).eval(t, x);
}

double FvSnapshot::total() const {
  double sum = 0.0;
  for (double v : w) sum += v;
  return sum * dx;
}

double FvSnapshot::max_abs() const {
  double m = 0.0;
  for (double v : w) m = std::max(m, std::abs(v));
  return m;
}

double FvSnapshot::max_gradient() const { return max_jump(w) / dx; }

FvResult simulate_fv(const Problem& p, const FvOptions& opts) {
  if (opts.n_cells < 16) throw ConfigError("burgers fv: n_cells must be >= 16");
  if (!(opts.cfl > 0.0 && opts.cfl <= 0.9)) {
    throw ConfigError("burgers fv: cfl must lie in (0, 0.9]");
  }
  if (!(opts.t_end > 0.0)) throw ConfigError("burgers fv: t_end must be > 0");
  for (double ts : opts.snapshot_times) {
    if (!(ts >= 0.0 && ts <= opts.t_end)) {
      throw ConfigError("burgers fv: snapshot times must lie in [0, t_end]");
    }
  }

  const Profile& w0 = p.w0;
  double x_lo = w0.x_lo;
  double x_hi = w0.x_hi;
  if (!opts.x_lo || !opts.x_hi) {
    double amp = 0.0;
    const std::size_t scan = 2001;
    for (std::size_t k = 0; k < scan; ++k) {
      const double x = w0.x_lo + (w0.x_hi - w0.x_lo) * static_cast<double>(k) /
                                     static_cast<double>(scan - 1);
      amp = std::max(amp, std::abs(w0.value(x)));
    }
    const double pad = p.epsilon * amp * p.damping.beta_integral(opts.t_end) +
                       0.1 * (w0.x_hi - w0.x_lo);
    x_lo -= pad;
    x_hi += pad;
  }
  if (opts.x_lo) x_lo = *opts.x_lo;
  if (opts.x_hi) x_hi = *opts.x_hi;
  if (!(x_lo < x_hi)) throw ConfigError("burgers fv: empty domain");

  const std::size_t n = opts.n_cells;
  const double dx = (x_hi - x_lo) / static_cast<double>(n);
  std::vector<double> centers(n);
  std::vector<double> w(n);
  const numerics::GaussRule rule = numerics::gauss_legendre(6);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = x_lo + dx * static_cast<double>(i);
    centers[i] = left + 0.5 * dx;
    double avg = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      avg += 0.5 * rule.weights[q] * w0.value(centers[i] + 0.5 * dx * rule.nodes[q]);
    }
    w[i] = p.epsilon * avg;
  }

  std::vector<double> targets = opts.snapshot_times;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  FvResult result;
  auto snapshot = [&](double t) {
    result.snapshots.push_back(FvSnapshot{t, centers, w, dx});
  };
  std::size_t next_target = 0;
  while (next_target < targets.size() && targets[next_target] <= 0.0) {
    snapshot(0.0);
    ++next_target;
  }

  result.initial_gradient = max_jump(w) / dx;
  const double threshold = opts.gradient_factor * result.initial_gradient;

  std::vector<double> flux(n + 1);
  double t = 0.0;
  double log_beta_t = 0.0;
  while (t < opts.t_end) {
    double amax = 0.0;
    for (double v : w) amax = std::max(amax, std::abs(v));
    const double stop = next_target < targets.size() ? targets[next_target] : opts.t_end;
    double dt = amax > 0.0 ? opts.cfl * dx / amax : stop - t;
    bool clipped = false;
    if (t + dt >= stop) {
      dt = stop - t;
      clipped = true;
    }
    if (!clipped && dt <= 1e-10) {
      result.verdict = NumericalBreakdown{t, BreakdownCause::CflCollapse};
      return result;
    }

    for (std::size_t f = 0; f <= n; ++f) {
      const double wl = f == 0 ? 0.0 : w[f - 1];
      const double wr = f == n ? 0.0 : w[f];
      const double a = std::max(std::abs(wl), std::abs(wr));
      flux[f] = 0.25 * (wl * wl + wr * wr) - 0.5 * a * (wr - wl);
    }
    const double t_next = clipped ? stop : t + dt;
    const double log_beta_next = p.damping.log_beta(t_next);
    const double decay = std::exp(log_beta_t - log_beta_next);
    const double ratio = dt / dx;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = (w[i] - ratio * (flux[i + 1] - flux[i])) * decay;
      finite = finite && std::isfinite(w[i]);
    }
    t = t_next;
    log_beta_t = log_beta_next;
    ++result.steps;

    if (!finite) {
      result.verdict = NumericalBreakdown{t, BreakdownCause::NonFinite};
      return result;
    }
    if (result.initial_gradient > 0.0) {
      if (max_jump(w) / dx > threshold) {
        result.verdict = NumericalBreakdown{t, BreakdownCause::GradientThreshold};
        return result;
      }
    }
    while (next_target < targets.size() && targets[next_target] <= t) {
      snapshot(t);
      ++next_target;
    }
  }
  result.verdict = Global{opts.t_end};
  return result;
}

}  // namespace burgers1d
}  // namespace critdamp
