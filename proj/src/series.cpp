#include "critdamp/series.hpp"

#include <stdexcept>

namespace critdamp {

void FunctionalSeries::push(double t, double value) {
  if (!samples.empty() && !(t > samples.back().first)) {
    throw std::invalid_argument("series '" + name + "': sample times must increase");
  }
  samples.emplace_back(t, value);
}

std::vector<double> FunctionalSeries::times() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.first);
  return out;
}

std::vector<double> FunctionalSeries::values() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.second);
  return out;
}

}  // namespace critdamp
