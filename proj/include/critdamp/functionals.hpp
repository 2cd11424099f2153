#ifndef CRITDAMP_FUNCTIONALS_HPP_
#define CRITDAMP_FUNCTIONALS_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "critdamp/damping_law.hpp"
#include "critdamp/euler_radial.hpp"
#include "critdamp/gas_model.hpp"
#include "critdamp/series.hpp"

namespace critdamp {
namespace functionals {

using radial::InitialProfile;
using radial::RadialState;

/// 4 pi int_l^M r (r - l)^2 (rho(0, r) - rho_bar) dr.
double q0(const InitialProfile& prof, const GasModel& g, double l);

/// 4 pi int_l^M (r^2 - l^2) (rho u)(0, r) dr.
double q1(const InitialProfile& prof, const GasModel& g, double l);

struct QHypothesisReport {
  std::size_t samples = 0;
  double min_q0 = 0.0;
  double min_q1 = 0.0;
  /// min_q0 > 0 and min_q1 >= 0 on the sampled l.
  bool holds = false;
};

/// Samples q0 and q1 at `samples` interior points of (M0, M) and reports the
/// smallest values.
QHypothesisReport check_q_hypotheses(const InitialProfile& prof, const GasModel& g,
                                     std::size_t samples = 256);

/// 4 pi int_l^inf r (r - l)^2 (rho - rho_bar) dr on the cell data; the cell
/// containing l is split there. Requires l > 0.
double P(const RadialState& s, double l);

/// Bound on the change of P(s, l) when the data move by one cell:
/// 4 pi dr int_l^inf |d/dr [r (r - l)^2]| |rho - rho_bar| dr.
double P_discretization_estimate(const RadialState& s, double l);

/// 8 pi int_l^inf r (p - p_bar - (rho - rho_bar)) dr. Nonnegative.
double G(const GasModel& g, const RadialState& s, double l);

/// P(t, .) sampled on a uniform band l in [t + M0, t + M].
struct PSlice {
  double t = 0.0;
  std::vector<double> l;
  std::vector<double> values;
};

/// P(s, .) on `samples` uniform points of [s.t + M0, s.t + M].
PSlice sample_P(const RadialState& s, double M0, double M, std::size_t samples = 64);

struct FSeries {
  FunctionalSeries F{"F", {}};
  /// int_{t+M0}^{t+M} P(t, l) dl / l by the trapezoid rule over the slice.
  FunctionalSeries inner{"F_inner", {}};
};

/// F(t) = int_0^t (t - tau) inner(tau) dtau by the trapezoid rule in tau.
/// Slices must start at t = 0 with increasing times; fewer than three
/// slices is a ConfigError.
FSeries compute_F(const std::vector<PSlice>& slices);

/// Second differences of F on a uniform time grid, one per interior sample.
FunctionalSeries F_second_difference(const FunctionalSeries& F);

/// Residuals (P_{k+1} - 2 P_k + P_{k-1}) / h^2 + mu (1+t_k)^(-lambda)
/// (P_{k+1} - P_{k-1}) / (2h) on a uniform time grid.
FunctionalSeries P_damped_residual(const FunctionalSeries& p, const DampingLaw& d);

struct PSignReport {
  double min_value = 0.0;
  double at_t = 0.0;
  double at_l = 0.0;
  /// 10 times the largest discretization estimate over the samples.
  double tol_P = 0.0;
  bool holds = true;  // min_value >= -tol_P
};

/// Checks P(t, l) >= -tol_P over the given states and l-samples in
/// [M0, t + M].
PSignReport check_P_sign(const std::vector<RadialState>& states, double M0, double M,
                         std::size_t samples = 64);

/// 4 pi int r^3 rho u dr.
double H(const RadialState& s);

/// 4 pi int r^2 (rho - rho_bar) dr.
double L(const RadialState& s);

/// 4 pi int r^2 (rho u^2 + 3 (p - p_bar)) dr, the right side of the H
/// equation.
double pressure_work(const GasModel& g, const RadialState& s);

/// (t + M)^2 (L0 + (4 pi^2 rho_bar / 3) (t + M)^3).
double alpha(double t, double M, double L0, const GasModel& g);

/// R_n = (H_{n+1} - H_n) / (t_{n+1} - t_n) + mu (1+t_n)^(-lambda) H_n - J_n.
std::vector<double> h_ode_residuals(const FunctionalSeries& h, const FunctionalSeries& j,
                                    const DampingLaw& d);

struct CriterionReport {
  double H0 = 0.0;
  double L0 = 0.0;
  double T_star = 0.0;
  double integral_value = 0.0;
  bool satisfied = false;
};

/// int_0^T dtau / (alpha(tau) beta(tau)) by adaptive quadrature.
double criterion_integral(double L0, double M, const DampingLaw& d, const GasModel& g,
                          double T_star);

/// Throws HypothesisError when L0 < 0 and std::domain_error unless
/// T_star > 0.
CriterionReport blowup_criterion(double H0, double L0, double M, const DampingLaw& d,
                                 const GasModel& g, double T_star);

/// Smallest T with H0 * criterion_integral(T) > 1 (to relative 1e-12),
/// or nothing when the limit as T -> infinity does not exceed 1.
std::optional<double> find_T_star(double H0, double L0, double M, const DampingLaw& d,
                                  const GasModel& g);

/// phi(t, r_i) = -int_{r_i}^inf u dr on the cell data.
std::vector<double> velocity_potential(const RadialState& s);

/// 4 pi int r^2 ((1+t)^(2 lambda) ((d_t psi)^2 + (d_r psi)^2) + psi^2) dr with
/// psi = phi / (1+t)^lambda and d_t phi from the Bernoulli relation.
double energy_E0(const GasModel& g, const DampingLaw& d, const RadialState& s);

/// Monitors for the series columns L, H, E0, min_rho, max_u, max_du_dr.
std::vector<radial::Monitor> standard_monitors(const GasModel& g, const DampingLaw& d);

}  // namespace functionals
}  // namespace critdamp

#endif  // CRITDAMP_FUNCTIONALS_HPP_
