#ifndef CRITDAMP_DAMPING_LAW_HPP_
#define CRITDAMP_DAMPING_LAW_HPP_

#include <optional>

namespace critdamp {

/// Limit of I(t) as t -> infinity: either a finite positive number or
/// divergence.
class IntegralLimit {
 public:
  static IntegralLimit finite(double value) { return IntegralLimit(value); }
  static IntegralLimit divergent() { return IntegralLimit(std::nullopt); }

  bool is_finite() const { return value_.has_value(); }
  /// Only meaningful when is_finite().
  double value() const { return value_.value(); }

 private:
  explicit IntegralLimit(std::optional<double> v) : value_(v) {}
  std::optional<double> value_;
};

/// Friction coefficient mu (1 + t)^(-lambda) together with its integrating
/// factor beta (beta' = mu (1 + t)^(-lambda) beta, beta(0) = 1) and the
/// accumulated reciprocal I(t) = int_0^t dtau / beta(tau).
class DampingLaw {
 public:
  DampingLaw(double mu, double lambda);

  double mu() const { return mu_; }
  double lambda() const { return lambda_; }

  /// mu (1 + t)^(-lambda).
  double coefficient(double t) const;

  double beta(double t) const;
  /// log(beta(t)); finite even where beta itself overflows.
  double log_beta(double t) const;

  /// I(t). Closed form for lambda in {0, 1} and mu = 0, adaptive
  /// quadrature otherwise.
  double beta_integral(double t) const;

  /// I(t) by adaptive quadrature regardless of closed forms.
  double beta_integral_quadrature(double t) const;

  IntegralLimit beta_integral_limit() const;

  /// True when a closed form for I(t) exists.
  bool has_closed_form_integral() const;

  /// For lambda < 1 and mu > 0: a horizon beyond which the remaining tail
  /// of I is below `tail_tol`.
  double tail_horizon(double tail_tol) const;

 private:
  double mu_;
  double lambda_;
};

}  // namespace critdamp

#endif  // CRITDAMP_DAMPING_LAW_HPP_
