#ifndef CRITDAMP_GAS_MODEL_HPP_
#define CRITDAMP_GAS_MODEL_HPP_

namespace critdamp {

/// Polytropic gas p = A rho^gamma with the pressure constant fixed by the
/// normalization c(rho_bar) = 1, i.e. A = 1 / (gamma rho_bar^(gamma - 1)).
///
/// All density arguments must be positive; violations throw
/// std::domain_error.
class GasModel {
 public:
  GasModel(double gamma, double rho_bar);

  double gamma() const { return gamma_; }
  double rho_bar() const { return rho_bar_; }
  double pressure_constant() const { return a_; }
  double background_pressure() const { return p_bar_; }

  double pressure(double rho) const;
  double sound_speed_sq(double rho) const;
  double sound_speed(double rho) const;

  /// Specific enthalpy with h'(rho) = c^2(rho) / rho and h(rho_bar) = 0.
  double enthalpy(double rho) const;

  /// Inverse of enthalpy(). Throws std::domain_error at or below the vacuum
  /// bound y = -1 / (gamma - 1).
  double enthalpy_inv(double y) const;

  /// p(rho) - p(rho_bar) - (rho - rho_bar). Nonnegative by convexity of the
  /// pressure law; equals A (rho - rho_bar)^2 for gamma = 2.
  double pressure_excess(double rho) const;

  /// p(rho_bar + excess) - p(rho_bar), evaluated without cancellation for
  /// small excess.
  double pressure_perturbation(double density_excess) const;

  /// pressure_excess() in terms of the density excess rho - rho_bar.
  double pressure_excess_from_excess(double density_excess) const;

 private:
  double gamma_;
  double rho_bar_;
  double a_;
  double p_bar_;
};

}  // namespace critdamp

#endif  // CRITDAMP_GAS_MODEL_HPP_
