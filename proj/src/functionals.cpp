#include "critdamp/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "critdamp/errors.hpp"
#include "critdamp/numerics.hpp"

namespace critdamp {
namespace functionals {

namespace {

constexpr double kPi = std::numbers::pi;

void require_l(double l) {
  if (!(l >= 0.0) || !std::isfinite(l)) throw std::domain_error("l must be >= 0");
}

numerics::QuadratureOptions tight() {
  numerics::QuadratureOptions o;
  o.abs_tol = 0.0;
  o.rel_tol = 1e-13;
  return o;
}

// Two-point Gauss rule on [a, b]; exact for cubics.
template <class F>
double gauss2(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double off = half / std::numbers::sqrt3;
  return half * (f(mid - off) + f(mid + off));
}

double enthalpy_from_excess(const GasModel& g, double excess) {
  const double gm1 = g.gamma() - 1.0;
  return std::expm1(gm1 * std::log1p(excess / g.rho_bar())) / gm1;
}

void require_uniform(const std::vector<double>& t, const char* what) {
  if (t.size() < 3) throw ConfigError(std::string(what) + ": need at least 3 samples");
  const double h = t[1] - t[0];
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    if (std::abs((t[k + 1] - t[k]) - h) > 1e-9 * std::max(1.0, std::abs(t[k + 1]))) {
      throw ConfigError(std::string(what) + ": time grid must be uniform");
    }
  }
}

}  // namespace

double q0(const InitialProfile& prof, const GasModel& g, double l) {
  (void)g;
  require_l(l);
  if (l >= prof.M || prof.epsilon == 0.0) return 0.0;
  const auto f = [&](double r) { return r * (r - l) * (r - l) * prof.epsilon * prof.rho0(r); };
  return 4.0 * kPi * numerics::integrate(f, l, prof.M, tight()).value;
}

double q1(const InitialProfile& prof, const GasModel& g, double l) {
  require_l(l);
  if (l >= prof.M || prof.epsilon == 0.0) return 0.0;
  const auto f = [&](double r) {
    const double rho = g.rho_bar() + prof.epsilon * prof.rho0(r);
    return (r * r - l * l) * rho * prof.epsilon * prof.u0(r);
  };
  return 4.0 * kPi * numerics::integrate(f, l, prof.M, tight()).value;
}

QHypothesisReport check_q_hypotheses(const InitialProfile& prof, const GasModel& g,
                                     std::size_t samples) {
  if (samples == 0) throw ConfigError("q check: samples must be > 0");
  QHypothesisReport rep;
  rep.samples = samples;
  rep.min_q0 = std::numeric_limits<double>::infinity();
  rep.min_q1 = std::numeric_limits<double>::infinity();
  const double width = prof.M - prof.M0;
  for (std::size_t j = 1; j <= samples; ++j) {
    const double l = prof.M0 + width * static_cast<double>(j) / static_cast<double>(samples + 1);
    rep.min_q0 = std::min(rep.min_q0, q0(prof, g, l));
    rep.min_q1 = std::min(rep.min_q1, q1(prof, g, l));
  }
  rep.holds = rep.min_q0 > 0.0 && rep.min_q1 >= 0.0;
  return rep;
}

double P(const RadialState& s, double l) {
  require_l(l);
  const std::size_t k = s.active_cells();
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double b = s.grid.face(i + 1);
    if (b <= l || s.rho_excess[i] == 0.0) continue;
    const double a = std::max(s.grid.face(i), l);
    const double w = gauss2([l](double r) { return r * (r - l) * (r - l); }, a, b);
    sum += w * s.rho_excess[i];
  }
  return 4.0 * kPi * sum;
}

double P_discretization_estimate(const RadialState& s, double l) {
  require_l(l);
  const std::size_t k = s.active_cells();
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double b = s.grid.face(i + 1);
    if (b <= l || s.rho_excess[i] == 0.0) continue;
    const double a = std::max(s.grid.face(i), l);
    const double w = gauss2([l](double r) { return (r - l) * (3.0 * r - l); }, a, b);
    sum += w * std::abs(s.rho_excess[i]);
  }
  return 4.0 * kPi * s.grid.dr() * sum;
}

double G(const GasModel& g, const RadialState& s, double l) {
  require_l(l);
  const std::size_t k = s.active_cells();
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double b = s.grid.face(i + 1);
    if (b <= l || s.rho_excess[i] == 0.0) continue;
    const double a = std::max(s.grid.face(i), l);
    sum += g.pressure_excess_from_excess(s.rho_excess[i]) * 0.5 * (b - a) * (b + a);
  }
  return 8.0 * kPi * sum;
}

PSlice sample_P(const RadialState& s, double M0, double M, std::size_t samples) {
  if (samples < 2) throw ConfigError("F: need at least 2 l-samples per slice");
  if (!(M > M0) || !(M0 >= 0.0)) throw ConfigError("F: need 0 <= M0 < M");
  PSlice slice;
  slice.t = s.t;
  slice.l.resize(samples);
  slice.values.resize(samples);
  const double lo = s.t + M0;
  const double width = M - M0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double l = lo + width * static_cast<double>(j) / static_cast<double>(samples - 1);
    slice.l[j] = l;
    slice.values[j] = P(s, l);
  }
  return slice;
}

FSeries compute_F(const std::vector<PSlice>& slices) {
  if (slices.size() < 3) throw ConfigError("F: need at least 3 time samples");
  if (slices.front().t != 0.0) throw ConfigError("F: first slice must be at t = 0");
  FSeries out;
  std::vector<double> tau(slices.size());
  std::vector<double> inner(slices.size());
  for (std::size_t k = 0; k < slices.size(); ++k) {
    const PSlice& s = slices[k];
    if (s.l.size() < 2 || s.l.size() != s.values.size()) {
      throw ConfigError("F: malformed P slice");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < s.l.size(); ++j) {
      if (!(s.l[j] > 0.0)) {
        throw ConfigError(
            "F: l-samples must be positive (dl / l is singular at l = 0; use M0 > 0)");
      }
      acc += 0.5 * (s.l[j + 1] - s.l[j]) *
             (s.values[j] / s.l[j] + s.values[j + 1] / s.l[j + 1]);
    }
    tau[k] = s.t;
    inner[k] = acc;
    out.inner.push(s.t, acc);
  }
  for (std::size_t k = 0; k < slices.size(); ++k) {
    double f = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      f += 0.5 * (tau[j + 1] - tau[j]) *
           ((tau[k] - tau[j]) * inner[j] + (tau[k] - tau[j + 1]) * inner[j + 1]);
    }
    out.F.push(tau[k], f);
  }
  return out;
}

FunctionalSeries F_second_difference(const FunctionalSeries& F) {
  const std::vector<double> t = F.times();
  const std::vector<double> v = F.values();
  require_uniform(t, "F second difference");
  FunctionalSeries out{"F_second_difference", {}};
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    const double h = 0.5 * (t[k + 1] - t[k - 1]);
    out.push(t[k], (v[k + 1] - 2.0 * v[k] + v[k - 1]) / (h * h));
  }
  return out;
}

FunctionalSeries P_damped_residual(const FunctionalSeries& p, const DampingLaw& d) {
  const std::vector<double> t = p.times();
  const std::vector<double> v = p.values();
  require_uniform(t, "P residual");
  FunctionalSeries out{"P_residual", {}};
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    const double h = 0.5 * (t[k + 1] - t[k - 1]);
    const double second = (v[k + 1] - 2.0 * v[k] + v[k - 1]) / (h * h);
    const double first = (v[k + 1] - v[k - 1]) / (2.0 * h);
    out.push(t[k], second + d.coefficient(t[k]) * first);
  }
  return out;
}

PSignReport check_P_sign(const std::vector<RadialState>& states, double M0, double M,
                         std::size_t samples) {
  if (samples < 2) throw ConfigError("P sign: need at least 2 l-samples");
  PSignReport rep;
  rep.min_value = std::numeric_limits<double>::infinity();
  double estimate = 0.0;
  for (const RadialState& s : states) {
    const double hi = s.t + M;
    for (std::size_t j = 0; j < samples; ++j) {
      const double l = M0 + (hi - M0) * static_cast<double>(j) / static_cast<double>(samples - 1);
      const double v = P(s, l);
      estimate = std::max(estimate, P_discretization_estimate(s, l));
      if (v < rep.min_value) {
        rep.min_value = v;
        rep.at_t = s.t;
        rep.at_l = l;
      }
    }
  }
  rep.tol_P = 10.0 * estimate;
  rep.holds = rep.min_value >= -rep.tol_P;
  return rep;
}

double H(const RadialState& s) {
  const std::size_t k = s.active_cells();
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += s.grid.moment3(i) * s.mom[i];
  return 4.0 * kPi * sum;
}

double L(const RadialState& s) {
  const std::size_t k = s.active_cells();
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += s.grid.volume(i) * s.rho_excess[i];
  return 4.0 * kPi * sum;
}

double pressure_work(const GasModel& g, const RadialState& s) {
  const std::size_t k = s.active_cells();
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double u = s.velocity(i);
    sum += s.grid.volume(i) *
           (s.mom[i] * u + 3.0 * g.pressure_perturbation(s.rho_excess[i]));
  }
  return 4.0 * kPi * sum;
}

double alpha(double t, double M, double L0, const GasModel& g) {
  const double x = t + M;
  return x * x * (L0 + (4.0 * kPi * kPi * g.rho_bar() / 3.0) * x * x * x);
}

std::vector<double> h_ode_residuals(const FunctionalSeries& h, const FunctionalSeries& j,
                                    const DampingLaw& d) {
  if (h.samples.size() != j.samples.size()) {
    throw ConfigError("H residual: series lengths differ");
  }
  std::vector<double> out;
  for (std::size_t n = 0; n + 1 < h.samples.size(); ++n) {
    const auto [t0, h0] = h.samples[n];
    const auto [t1, h1] = h.samples[n + 1];
    out.push_back((h1 - h0) / (t1 - t0) + d.coefficient(t0) * h0 - j.samples[n].second);
  }
  return out;
}

double criterion_integral(double L0, double M, const DampingLaw& d, const GasModel& g,
                          double T_star) {
  if (!(T_star >= 0.0)) throw std::domain_error("T_star must be >= 0");
  if (T_star == 0.0) return 0.0;
  const auto f = [&](double tau) {
    return std::exp(-d.log_beta(tau)) / alpha(tau, M, L0, g);
  };
  const std::vector<double> bp = numerics::geometric_breakpoints(T_star);
  return numerics::integrate(f, bp, tight()).value;
}

CriterionReport blowup_criterion(double H0, double L0, double M, const DampingLaw& d,
                                 const GasModel& g, double T_star) {
  if (L0 < 0.0) throw HypothesisError("criterion requires L(0) >= 0");
  if (!(T_star > 0.0)) throw std::domain_error("T_star must be > 0");
  if (!(M > 0.0)) throw std::domain_error("M must be > 0");
  CriterionReport rep;
  rep.H0 = H0;
  rep.L0 = L0;
  rep.T_star = T_star;
  rep.integral_value = criterion_integral(L0, M, d, g, T_star);
  rep.satisfied = H0 * rep.integral_value > 1.0;
  return rep;
}

std::optional<double> find_T_star(double H0, double L0, double M, const DampingLaw& d,
                                  const GasModel& g) {
  if (L0 < 0.0) throw HypothesisError("criterion requires L(0) >= 0");
  if (!(H0 > 0.0)) return std::nullopt;
  // int_T^inf dtau / alpha <= 3 / (16 pi^2 rho_bar (T + M)^4).
  const double c = 3.0 / (16.0 * kPi * kPi * g.rho_bar());
  const double t_big = std::pow(c * H0 * 1e14, 0.25) - M;
  const double reach = H0 * criterion_integral(L0, M, d, g, std::max(t_big, 1.0));
  if (!(reach > 1.0)) return std::nullopt;
  const auto f = [&](double T) { return H0 * criterion_integral(L0, M, d, g, T) - 1.0; };
  double hi = 1.0;
  while (f(hi) <= 0.0) hi *= 2.0;
  const auto df = [&](double T) {
    return H0 * std::exp(-d.log_beta(T)) / alpha(T, M, L0, g);
  };
  const double root = numerics::find_root_newton(f, df, 0.0, hi, 1e-13 * hi);
  // Report a T with the criterion strictly satisfied.
  double t = root;
  while (f(t) <= 0.0) t = std::nextafter(t + 1e-12 * t, hi);
  return t;
}

std::vector<double> velocity_potential(const RadialState& s) {
  const std::size_t n = s.grid.n_cells();
  const std::size_t k = s.active_cells();
  const double dr = s.grid.dr();
  std::vector<double> phi(n, 0.0);
  double outer = 0.0;  // int over cells beyond i
  for (std::size_t i = k; i > 0; --i) {
    const double u = s.velocity(i - 1);
    phi[i - 1] = -(outer + 0.5 * u * dr);
    outer += u * dr;
  }
  return phi;
}

double energy_E0(const GasModel& g, const DampingLaw& d, const RadialState& s) {
  const std::vector<double> phi = velocity_potential(s);
  const double t = s.t;
  const double lam = d.lambda();
  const double coef = d.coefficient(t);
  const double damp_sq = std::exp(-2.0 * lam * std::log1p(t));
  double sum = 0.0;
  for (std::size_t i = 0; i < s.grid.n_cells(); ++i) {
    const double u = i < s.active_cells() ? s.velocity(i) : 0.0;
    const double h = i < s.active_cells() ? enthalpy_from_excess(g, s.rho_excess[i]) : 0.0;
    if (phi[i] == 0.0 && u == 0.0 && h == 0.0) continue;
    const double dt_phi = -(0.5 * u * u + h + coef * phi[i]);
    const double dt_term = dt_phi - lam * phi[i] / (1.0 + t);
    sum += s.grid.volume(i) * (dt_term * dt_term + u * u + phi[i] * phi[i] * damp_sq);
  }
  return 4.0 * kPi * sum;
}

std::vector<radial::Monitor> standard_monitors(const GasModel& g, const DampingLaw& d) {
  std::vector<radial::Monitor> m;
  m.push_back({"L", [](const RadialState& s) { return L(s); }});
  m.push_back({"H", [](const RadialState& s) { return H(s); }});
  m.push_back({"E0", [g, d](const RadialState& s) { return energy_E0(g, d, s); }});
  m.push_back({"min_rho", [](const RadialState& s) {
                 double v = s.rho_bar;
                 for (std::size_t i = 0; i < s.active_cells(); ++i) v = std::min(v, s.density(i));
                 return v;
               }});
  m.push_back({"max_u", [](const RadialState& s) {
                 double v = 0.0;
                 for (std::size_t i = 0; i < s.active_cells(); ++i) {
                   v = std::max(v, std::abs(s.velocity(i)));
                 }
                 return v;
               }});
  m.push_back({"max_du_dr",
               [](const RadialState& s) { return radial::max_velocity_gradient(s); }});
  return m;
}

}  // namespace functionals
}  // namespace critdamp
