#ifndef CRITDAMP_BURGERS1D_HPP_
#define CRITDAMP_BURGERS1D_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "critdamp/damping_law.hpp"
#include "critdamp/verdict.hpp"

namespace critdamp {
namespace burgers1d {

/// Initial profile w0 with its derivative, vanishing outside [x_lo, x_hi].
struct Profile {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double x_lo;
  double x_hi;
};

/// exp(-1 / (1 - (x/half_width)^2)) on |x| < half_width.
Profile bump_profile(double half_width = 1.0);

/// -x chi(x/half_width) with a smooth cutoff chi equal to one on
/// [-1/2, 1/2] and zero outside (-1, 1). Its steepest descent is exactly 1,
/// attained on the plateau.
Profile ramp_profile(double half_width = 1.0);

/// Damped Burgers problem w_t + w w_x = -mu (1+t)^(-lambda) w,
/// w(0, x) = epsilon w0(x).
struct Problem {
  Problem(Profile w0, double epsilon, DampingLaw damping);

  Profile w0;
  double epsilon;
  DampingLaw damping;
};

/// max(-w0') over the support: dense scan followed by golden-section
/// refinement around the best sample. Zero when w0 is nondecreasing.
double max_negative_slope(const Profile& w0, std::size_t samples = 100000);

/// Lifespan from the crossing condition epsilon m I(T) = 1. Global when m = 0
/// or when epsilon m I(inf) <= 1 (the border case included).
Verdict classify_lifespan(const DampingLaw& damping, double epsilon,
                          double max_slope);
Verdict classify_lifespan(const Problem& p);

/// Exact solution by characteristics: w(t, X) = epsilon w0(x0) / beta(t)
/// on X = x0 + epsilon w0(x0) I(t). Computes m and the lifespan once.
class CharacteristicSolution {
 public:
  explicit CharacteristicSolution(Problem p);

  const Problem& problem() const { return problem_; }
  double max_slope() const { return max_slope_; }
  const Verdict& lifespan() const { return lifespan_; }

  /// Foot x0 of the characteristic through (t, x); x itself outside the
  /// support. Throws StateError at or after the lifespan.
  double foot(double t, double x) const;

  double eval(double t, double x) const;

 private:
  void require_smooth(double t) const;

  Problem problem_;
  double max_slope_;
  Verdict lifespan_;
};

/// Convenience wrapper building a CharacteristicSolution per call.
double eval_characteristic(const Problem& p, double t, double x);

struct FvOptions {
  std::size_t n_cells = 400;
  double t_end = 1.0;
  double cfl = 0.5;
  /// Computational domain; defaults to the support widened by the largest
  /// characteristic displacement up to t_end plus a margin.
  std::optional<double> x_lo;
  std::optional<double> x_hi;
  /// Output times in [0, t_end]; each is hit exactly.
  std::vector<double> snapshot_times;
  /// Breakdown when max |dw/dx| exceeds this multiple of its initial value.
  double gradient_factor = 1e3;
};

struct FvSnapshot {
  double t = 0.0;
  std::vector<double> x;  // cell centers
  std::vector<double> w;  // cell averages
  double dx = 0.0;

  /// Sum of w_i dx.
  double total() const;
  double max_abs() const;
  /// max |w_{i+1} - w_i| / dx.
  double max_gradient() const;
};

struct FvResult {
  std::vector<FvSnapshot> snapshots;
  Verdict verdict;
  std::size_t steps = 0;
  double initial_gradient = 0.0;
};

/// Conservative local Lax-Friedrichs scheme for the flux w^2/2, with the
/// damping removed exactly each step by the factor beta(t_n)/beta(t_{n+1}).
/// Throws ConfigError for invalid grid or CFL settings.
FvResult simulate_fv(const Problem& p, const FvOptions& opts);

}  // namespace burgers1d
}  // namespace critdamp

#endif  // CRITDAMP_BURGERS1D_HPP_
