#include "critdamp/damping_law.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "critdamp/numerics.hpp"

namespace critdamp {

namespace {

void require_nonnegative_time(double t, const char* what) {
  if (!(t >= 0.0)) {
    throw std::domain_error(std::string(what) + ": time must be >= 0");
  }
}

// Upper bound on log of int_T^inf dtau / beta(tau) for lambda < 1, mu > 0.
// With s = 1 - lambda, k = mu / s and v = (1 + tau)^s the tail becomes
// (e^k / s) int_V^inf v^a e^{-k v} dv, a = 1/s - 1, and for V > a / k the
// integrand's log-slope is at most a / V - k.
double log_tail_bound(double mu, double lambda, double horizon) {
  const double s = 1.0 - lambda;
  const double k = mu / s;
  const double a = 1.0 / s - 1.0;
  const double v = std::pow(1.0 + horizon, s);
  const double decay = k - a / v;
  if (!(decay > 0.0)) return INFINITY;
  return k - std::log(s) + a * std::log(v) - k * v - std::log(decay);
}

}  // namespace

DampingLaw::DampingLaw(double mu, double lambda) : mu_(mu), lambda_(lambda) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::domain_error("DampingLaw: mu must be >= 0");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("DampingLaw: lambda must be >= 0");
  }
}

double DampingLaw::coefficient(double t) const {
  require_nonnegative_time(t, "coefficient");
  if (lambda_ == 0.0) return mu_;
  return mu_ * std::exp(-lambda_ * std::log1p(t));
}

double DampingLaw::log_beta(double t) const {
  require_nonnegative_time(t, "beta");
  if (mu_ == 0.0) return 0.0;
  if (lambda_ == 1.0) return mu_ * std::log1p(t);
  const double s = 1.0 - lambda_;
  return (mu_ / s) * std::expm1(s * std::log1p(t));
}

double DampingLaw::beta(double t) const { return std::exp(log_beta(t)); }

bool DampingLaw::has_closed_form_integral() const {
  return mu_ == 0.0 || lambda_ == 0.0 || lambda_ == 1.0;
}

double DampingLaw::beta_integral(double t) const {
  require_nonnegative_time(t, "beta_integral");
  if (mu_ == 0.0) return t;
  if (lambda_ == 1.0) {
    if (mu_ == 1.0) return std::log1p(t);
    const double s = 1.0 - mu_;
    return std::expm1(s * std::log1p(t)) / s;
  }
  if (lambda_ == 0.0) return -std::expm1(-mu_ * t) / mu_;
  return beta_integral_quadrature(t);
}

double DampingLaw::beta_integral_quadrature(double t) const {
  require_nonnegative_time(t, "beta_integral");
  if (t == 0.0) return 0.0;
  const auto integrand = [this](double tau) { return std::exp(-log_beta(tau)); };
  const auto pts = numerics::geometric_breakpoints(t);
  return numerics::integrate(integrand, pts).value;
}

double DampingLaw::tail_horizon(double tail_tol) const {
  if (!(lambda_ < 1.0 && mu_ > 0.0)) {
    throw std::domain_error("tail_horizon: tail is not integrable");
  }
  const double target = std::log(tail_tol);
  double horizon = 1.0;
  while (log_tail_bound(mu_, lambda_, horizon) > target) {
    horizon *= 2.0;
    if (!std::isfinite(horizon)) {
      throw std::overflow_error("tail_horizon: horizon overflow");
    }
  }
  return horizon;
}

IntegralLimit DampingLaw::beta_integral_limit() const {
  if (lambda_ < 1.0 && mu_ > 0.0) {
    if (lambda_ == 0.0) return IntegralLimit::finite(1.0 / mu_);
    // I(inf) = I(T_big) + tail with the tail below 1e-14.
    return IntegralLimit::finite(beta_integral_quadrature(tail_horizon(1e-14)));
  }
  if (lambda_ == 1.0 && mu_ > 1.0) {
    return IntegralLimit::finite(1.0 / (mu_ - 1.0));
  }
  return IntegralLimit::divergent();
}

}  // namespace critdamp
