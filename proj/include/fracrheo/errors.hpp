#pragma once

#include <stdexcept>
#include <string>

namespace fracrheo {

// Gamma evaluated at a non-positive integer.
struct pole_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Result magnitude beyond the representable double range.
struct overflow_error : std::range_error {
  using std::range_error::range_error;
};

// Series evaluation could not certify the requested tolerance.  Carries the
// best available estimate and the error bound that was achieved.
struct convergence_error : std::runtime_error {
  double best_estimate;
  double achieved_error;
  convergence_error(const std::string& msg, double best, double achieved)
      : std::runtime_error(msg), best_estimate(best), achieved_error(achieved) {}
};

// Requested operation is not defined for this model (e.g. time-domain kernel
// of the general N-term model).
struct unsupported_model_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Sampled-signal grid does not match what the operation requires.
struct grid_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Signal contents unusable: non-finite values, sentinel entries, undeclared
// jump at the origin.
struct signal_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Truncated Laplace transform: the kernel tail beyond the horizon is not
// negligible at the requested s.
struct tail_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Model-config / CSV parse failure with a line-anchored message.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fracrheo
