#ifndef CRITDAMP_VERDICT_HPP_
#define CRITDAMP_VERDICT_HPP_

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <variant>

namespace critdamp {

enum class BreakdownCause { NegativeDensity, CflCollapse, GradientThreshold, NonFinite };

std::string_view to_string(BreakdownCause cause);

/// Smooth solution up to `horizon` (infinity for an exact classification).
struct Global {
  double horizon = std::numeric_limits<double>::infinity();
};

/// Finite lifespan T. `log1p_lifespan` = log(1 + T) stays finite when T
/// itself exceeds the double range (T is then +inf).
struct FiniteLifespan {
  double lifespan;
  double log1p_lifespan;
};

struct NumericalBreakdown {
  double time;
  BreakdownCause cause;
};

using Verdict = std::variant<Global, FiniteLifespan, NumericalBreakdown>;

inline bool is_global(const Verdict& v) { return std::holds_alternative<Global>(v); }
inline bool is_finite_lifespan(const Verdict& v) {
  return std::holds_alternative<FiniteLifespan>(v);
}
inline bool is_breakdown(const Verdict& v) {
  return std::holds_alternative<NumericalBreakdown>(v);
}

/// `Global`, `FiniteLifespan:<T>` or `NumericalBreakdown:<t>:<cause>`, with
/// numbers in shortest round-trip form.
std::string to_string(const Verdict& v);

/// Lifespan (or reached horizon, or breakdown time) as printed in the
/// T_or_horizon column.
std::string time_field(const Verdict& v);

}  // namespace critdamp

#endif  // CRITDAMP_VERDICT_HPP_
