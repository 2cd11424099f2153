#ifndef CRITDAMP_EULER_RADIAL_HPP_
#define CRITDAMP_EULER_RADIAL_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "critdamp/damping_law.hpp"
#include "critdamp/gas_model.hpp"
#include "critdamp/series.hpp"
#include "critdamp/verdict.hpp"

namespace critdamp {
namespace radial {

/// Uniform grid of n_cells shells on [0, r_max]. Volumes and moments are
/// per unit solid angle (the 4 pi is applied by the functionals).
class RadialGrid {
 public:
  RadialGrid(double r_max, std::size_t n_cells);

  double r_max() const { return r_max_; }
  std::size_t n_cells() const { return n_; }
  double dr() const { return dr_; }
  double center(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dr_; }
  double face(std::size_t f) const { return static_cast<double>(f) * dr_; }
  /// int r^2 dr over cell i.
  double volume(std::size_t i) const { return (*volume_)[i]; }
  /// int r^3 dr over cell i.
  double moment3(std::size_t i) const { return (*moment3_)[i]; }
  /// r^2 at face f.
  double area(std::size_t f) const { return face(f) * face(f); }

 private:
  double r_max_;
  std::size_t n_;
  double dr_;
  // Shared so that copying states does not copy the tables.
  std::shared_ptr<const std::vector<double>> volume_;
  std::shared_ptr<const std::vector<double>> moment3_;
};

/// Radial data rho(0, r) = rho_bar + epsilon rho0(r), u(0, r) = epsilon u0(r),
/// both supported in [0, M]. M0 in [0, M) is the inner radius used by the
/// P-functional hypotheses.
struct InitialProfile {
  std::string name;
  std::function<double(double)> rho0;
  std::function<double(double)> u0;
  double epsilon = 1.0;
  double M = 1.0;
  double M0 = 0.0;
};

/// rho0 = exp(-1 / (1 - (r/M)^2)), u0 = 0.
InitialProfile bump_profile(double epsilon, double M, double M0 = 0.0);
/// rho0 = the same bump rescaled onto the annulus (M0, M), u0 = 0.
InitialProfile shell_profile(double epsilon, double M, double M0);
/// Shell with the linear outgoing-wave relation: rho0 = rho_bar S(r),
/// u0 = S(r) (c(rho_bar) = 1), so rho u >= 0 everywhere.
InitialProfile outgoing_shell_profile(double epsilon, double M, double M0,
                                      double rho_bar);
/// Piecewise-linear interpolation of sampled (r, rho0, u0) rows; zero past
/// the last sample.
InitialProfile sampled_profile(std::vector<double> r, std::vector<double> rho0,
                               std::vector<double> u0, double epsilon, double M,
                               double M0);

/// Time-stamped cell averages. Density is stored as the excess
/// rho - rho_bar so that mass sums do not lose digits to the background.
struct RadialState {
  RadialGrid grid;
  double rho_bar;
  double t = 0.0;
  std::vector<double> rho_excess;
  std::vector<double> mom;
  /// Outer face of the last perturbed cell; all cells beyond are exactly the
  /// background state.
  double support_radius = 0.0;

  double density(std::size_t i) const { return rho_bar + rho_excess[i]; }
  double velocity(std::size_t i) const { return mom[i] / density(i); }
  std::vector<double> densities() const;
  std::vector<double> velocities() const;
  /// Number of leading cells that can differ from the background.
  std::size_t active_cells() const;
  /// Recomputes support_radius from the data.
  void update_support();
};

/// Throws ConfigError when a cell has non-positive density.
RadialState init_state(const GasModel& g, const InitialProfile& prof,
                       const RadialGrid& grid);

/// Builds a state from cell densities and momenta (e.g. read back from a
/// snapshot file).
RadialState state_from_cells(const RadialGrid& grid, double rho_bar, double t,
                             const std::vector<double>& rho,
                             const std::vector<double>& mom);

struct StepOptions {
  double cfl = 0.5;
  /// Second-order minmod reconstruction with a two-stage SSP Runge-Kutta
  /// update instead of the first-order scheme.
  bool muscl = false;
  /// Overrides the CFL step.
  std::optional<double> fixed_dt;
  /// The step is shortened so that the new time lands exactly on stop_time
  /// when it would otherwise pass it.
  std::optional<double> stop_time;
};

struct StepResult {
  RadialState state;
  double dt = 0.0;
  std::optional<NumericalBreakdown> breakdown;
};

/// Largest max(|u| + c) over the cells (at least the background speed 1).
double max_wave_speed(const GasModel& g, const RadialState& s);

/// cfl dr / max(|u| + c).
double cfl_time_step(const GasModel& g, const RadialState& s, double cfl);

/// max |u_{i+1} - u_i| / dr.
double max_velocity_gradient(const RadialState& s);

/// max |c_{i+1} - c_i| / dr.
double max_sound_speed_gradient(const GasModel& g, const RadialState& s);

/// One explicit finite-volume step: Rusanov fluxes on (rho, rho u) across
/// spherical faces, the pressure source 2p/r integrated over each shell,
/// and the damping removed exactly by beta(t_n)/beta(t_{n+1}) on the
/// momentum afterwards.
StepResult step(const GasModel& g, const DampingLaw& d, const RadialState& s,
                const StepOptions& opts);
StepResult step(const GasModel& g, const DampingLaw& d, const RadialState& s,
                double cfl);

struct Monitor {
  std::string name;
  std::function<double(const RadialState&)> eval;
};

struct RunOptions {
  double t_end = 1.0;
  double cfl = 0.5;
  bool muscl = false;
  /// Monitor sampling interval; 0 samples after every step.
  double monitor_cadence = 0.1;
  /// Snapshot interval; 0 disables snapshots. With equal cadences the
  /// snapshot times coincide with the monitor times; the final state is
  /// always kept.
  double snapshot_cadence = 0.0;
  /// Breakdown when max |du/dr| reaches this multiple of its reference
  /// value at t = 0: max |du/dr|, or max |dc/dr| when the data start at
  /// rest. No gradient check when both vanish.
  double gradient_factor = 1e3;
  /// Optional early stop, checked at every monitor time.
  std::function<bool(const RadialState&)> stop;
};

struct RunResult {
  std::vector<FunctionalSeries> series;
  std::vector<RadialState> snapshots;
  Verdict verdict;
  std::size_t steps = 0;
  double reference_gradient = 0.0;
  /// CFL step of the state at every monitor sample.
  FunctionalSeries dt_series{"dt", {}};
};

/// Throws ConfigError unless the domain is large enough for the waves to
/// stay clear of the outer boundary up to t_end.
void validate_run(const GasModel& g, const RadialState& initial,
                  const InitialProfile& prof, double t_end, double cfl);

RunResult run(const GasModel& g, const DampingLaw& d, const InitialProfile& prof,
              const RadialGrid& grid, const RunOptions& opts,
              const std::vector<Monitor>& monitors);

}  // namespace radial
}  // namespace critdamp

#endif  // CRITDAMP_EULER_RADIAL_HPP_
