#ifndef CRITDAMP_ERRORS_HPP_
#define CRITDAMP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace critdamp {

// Invalid numeric domain arguments are reported with std::domain_error.

/// Invalid configuration or run setup.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation requested in a state where it is not defined (e.g. evaluating
/// the characteristic solution past its lifespan).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem hypothesis required by the operation does not hold.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace critdamp

#endif  // CRITDAMP_ERRORS_HPP_
