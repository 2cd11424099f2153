#include "critdamp/verdict.hpp"

#include "critdamp/csv.hpp"

namespace critdamp {

namespace {

std::string lifespan_field(const FiniteLifespan& f) {
  if (std::isfinite(f.lifespan)) return format_double(f.lifespan);
  return format_from_log1p(f.log1p_lifespan);
}

}  // namespace

std::string_view to_string(BreakdownCause cause) {
  switch (cause) {
    case BreakdownCause::NegativeDensity: return "NegativeDensity";
    case BreakdownCause::CflCollapse: return "CflCollapse";
    case BreakdownCause::GradientThreshold: return "GradientThreshold";
    case BreakdownCause::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

std::string to_string(const Verdict& v) {
  if (const auto* f = std::get_if<FiniteLifespan>(&v)) {
    return "FiniteLifespan:" + lifespan_field(*f);
  }
  if (const auto* b = std::get_if<NumericalBreakdown>(&v)) {
    return "NumericalBreakdown:" + format_double(b->time) + ":" +
           std::string(to_string(b->cause));
  }
  return "Global";
}

std::string time_field(const Verdict& v) {
  if (const auto* f = std::get_if<FiniteLifespan>(&v)) {
    return lifespan_field(*f);
  }
  if (const auto* b = std::get_if<NumericalBreakdown>(&v)) {
    return format_double(b->time);
  }
  return format_double(std::get<Global>(v).horizon);
}

}  // namespace critdamp
