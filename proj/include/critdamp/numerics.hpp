#ifndef CRITDAMP_NUMERICS_HPP_
#define CRITDAMP_NUMERICS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace critdamp {
namespace numerics {

using ScalarFunction = std::function<double(double)>;

struct QuadratureOptions {
  double abs_tol = 1e-12;
  // Floor relative to |result|; an absolute tolerance alone cannot be met
  // by integrals much larger than one.
  double rel_tol = 1e-14;
  std::size_t max_subdivisions = 20000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature of f over [a, b].
QuadratureResult integrate(const ScalarFunction& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Same, starting from the partition given by sorted `breakpoints`
/// (first and last entries are the integration limits).
QuadratureResult integrate(const ScalarFunction& f,
                           std::span<const double> breakpoints,
                           const QuadratureOptions& opts = {});

/// Breakpoints 0, 1, 3, 7, ..., 2^k - 1, t: a partition suited to
/// integrands varying on a scale comparable to (1 + t).
std::vector<double> geometric_breakpoints(double t);

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(std::size_t n);

/// Root of f in [a, b] where f(a) and f(b) have opposite signs (or one is
/// zero). Bisection safeguarded secant; stops when the bracket is shorter
/// than xtol.
double find_root(const ScalarFunction& f, double a, double b, double xtol);

/// Newton iteration kept inside the bracket [a, b]; falls back to
/// bisection whenever the Newton step leaves the bracket.
double find_root_newton(const ScalarFunction& f, const ScalarFunction& df,
                        double a, double b, double xtol, double rtol = 1e-15);

/// Maximizer of f on [a, b] by golden-section search (f assumed unimodal
/// there).
double golden_section_max(const ScalarFunction& f, double a, double b,
                          double xtol);

}  // namespace numerics
}  // namespace critdamp

#endif  // CRITDAMP_NUMERICS_HPP_
