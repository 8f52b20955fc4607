#pragma once

#include <stdexcept>
#include <string>

namespace alphapi {

/// Trajectory left the representable range (NaN/Inf state) during integration.
class IntegrationBlowupError : public std::runtime_error {
 public:
  IntegrationBlowupError(double t, const std::string& what)
      : std::runtime_error(what), time(t) {}
  double time;
};

/// A window does not carry enough sub-step samples for the quadrature rule.
class InsufficientResolutionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Regression data does not excite the basis; the batch solve is rank
/// deficient beyond the ridge fallback.
class ExcitationError : public std::runtime_error {
 public:
  ExcitationError(double sigma_min, const std::string& what)
      : std::runtime_error(what), smallest_singular_value(sigma_min) {}
  double smallest_singular_value;
};

/// A DataSet was collected against a different system signature.
class StaleDataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The Lyapunov operator of one damped-Newton matrix step is singular.
class StepFailureError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Riccati iteration diverged; the requested attenuation level is below the
/// instance's feasibility threshold.
class GammaTooSmallError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed configuration file or basis text.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace alphapi
