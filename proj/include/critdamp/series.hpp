#ifndef CRITDAMP_SERIES_HPP_
#define CRITDAMP_SERIES_HPP_

#include <string>
#include <utility>
#include <vector>

namespace critdamp {

/// Named scalar time series with strictly increasing sample times.
struct FunctionalSeries {
  std::string name;
  std::vector<std::pair<double, double>> samples;

  /// Appends (t, value); throws std::invalid_argument when t does not
  /// exceed the previous sample time.
  void push(double t, double value);
  std::vector<double> times() const;
  std::vector<double> values() const;
};

}  // namespace critdamp

#endif  // CRITDAMP_SERIES_HPP_
