#include "critdamp/gas_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace critdamp {

namespace {

void require_positive_density(double rho, const char* what) {
  if (!(rho > 0.0)) {
    throw std::domain_error(std::string(what) +
                            ": density must be positive, got " +
                            std::to_string(rho));
  }
}

// (1 + x)^g - 1 - g x for x > -1.
double binomial_remainder(double x, double g) {
  if (std::abs(x) < 0.5) {
    // Binomial series from the quadratic term on; converges for |x| < 1 and
    // avoids cancelling the two leading terms.
    double coeff = g * (g - 1.0) / 2.0;
    double power = x * x;
    double sum = 0.0;
    for (int k = 2; k < 200; ++k) {
      const double term = coeff * power;
      sum += term;
      if (term == 0.0 || std::abs(term) <= 1e-18 * std::abs(sum)) break;
      coeff *= (g - k) / (k + 1.0);
      power *= x;
    }
    return sum;
  }
  return std::pow(1.0 + x, g) - 1.0 - g * x;
}

}  // namespace

GasModel::GasModel(double gamma, double rho_bar)
    : gamma_(gamma), rho_bar_(rho_bar) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw std::domain_error("GasModel: gamma must be > 1");
  }
  if (!(rho_bar > 0.0) || !std::isfinite(rho_bar)) {
    throw std::domain_error("GasModel: rho_bar must be > 0");
  }
  a_ = 1.0 / (gamma_ * std::pow(rho_bar_, gamma_ - 1.0));
  p_bar_ = rho_bar_ / gamma_;
}

double GasModel::pressure(double rho) const {
  require_positive_density(rho, "pressure");
  return a_ * std::pow(rho, gamma_);
}

double GasModel::sound_speed_sq(double rho) const {
  require_positive_density(rho, "sound_speed_sq");
  return std::pow(rho / rho_bar_, gamma_ - 1.0);
}

double GasModel::sound_speed(double rho) const {
  return std::sqrt(sound_speed_sq(rho));
}

double GasModel::enthalpy(double rho) const {
  require_positive_density(rho, "enthalpy");
  // (c^2 - 1) / (gamma - 1) with c^2 = (rho / rho_bar)^(gamma - 1).
  return std::expm1((gamma_ - 1.0) * std::log(rho / rho_bar_)) /
         (gamma_ - 1.0);
}

double GasModel::enthalpy_inv(double y) const {
  // Compare against the bound itself: 1 + (gamma - 1) y can round to a
  // tiny positive number at y = -1/(gamma - 1).
  if (!(y > -1.0 / (gamma_ - 1.0)) || !(1.0 + (gamma_ - 1.0) * y > 0.0)) {
    throw std::domain_error(
        "enthalpy_inv: enthalpy at or below the vacuum bound -1/(gamma-1)");
  }
  return rho_bar_ * std::exp(std::log1p((gamma_ - 1.0) * y) / (gamma_ - 1.0));
}

double GasModel::pressure_excess(double rho) const {
  require_positive_density(rho, "pressure_excess");
  return pressure_excess_from_excess(rho - rho_bar_);
}

double GasModel::pressure_perturbation(double density_excess) const {
  const double x = density_excess / rho_bar_;
  if (!(x > -1.0)) {
    throw std::domain_error("pressure_perturbation: density must be positive");
  }
  return p_bar_ * std::expm1(gamma_ * std::log1p(x));
}

double GasModel::pressure_excess_from_excess(double density_excess) const {
  const double x = density_excess / rho_bar_;
  if (!(x > -1.0)) {
    throw std::domain_error("pressure_excess: density must be positive");
  }
  return p_bar_ * binomial_remainder(x, gamma_);
}

}  // namespace critdamp
