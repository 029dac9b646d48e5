#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "fracrheo/errors.hpp"

// Real Gamma function helpers.  Everything downstream (Mittag-Leffler sums,
// Grunwald-Letnikov weights, power-law kernels) funnels through these, so the
// negative axis and the poles get explicit treatment instead of relying on
// libm edge-case behavior.

namespace fracrheo {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Largest x with Gamma(x) finite in double.
inline constexpr double kGammaOverflowEdge = 171.62437695630272;

namespace detail {

// sin(pi*x) with exact integer folding: r = x - rint(x) is computed without
// rounding error, so the result stays accurate near the poles of Gamma.
inline double sin_pi(double x) {
  const double n = std::rint(x);
  const double r = x - n;  // |r| <= 0.5, exact
  const double s = std::sin(kPi * r);
  return (std::fmod(n, 2.0) == 0.0) ? s : -s;
}

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::rint(x);
}

}  // namespace detail

// Gamma(x).  Reflection for x < 0.5; throws pole_error at 0, -1, -2, ... and
// overflow_error above the representable range.
inline double gamma(double x) {
  if (std::isnan(x)) throw std::invalid_argument("gamma: NaN argument");
  if (detail::is_nonpositive_integer(x))
    throw pole_error("gamma: pole at x = " + std::to_string(x));
  if (x >= 0.5) {
    if (x > kGammaOverflowEdge)
      throw overflow_error("gamma: overflow at x = " + std::to_string(x));
    return std::tgamma(x);
  }
  // Gamma(x) = pi / (sin(pi x) * Gamma(1-x))
  const double reflected = 1.0 - x;
  const double s = detail::sin_pi(x);
  if (reflected <= kGammaOverflowEdge) return kPi / (s * std::tgamma(reflected));
  // Deep negative axis: |Gamma| underflows; go through logs to keep the sign.
  int sign = 0;
  const double lg = lgamma_r(reflected, &sign);
  const double mag = std::exp(std::log(kPi) - std::log(std::abs(s)) - lg);
  return (s > 0.0) ? mag : -mag;
}

// 1/Gamma(x) as a total function: exactly 0.0 at the poles of Gamma.  Entire,
// so no error paths; values beyond double range saturate to +/-inf.
inline double recip_gamma(double x) {
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (detail::is_nonpositive_integer(x)) return 0.0;
  if (x >= 0.5) {
    if (x > kGammaOverflowEdge) return 0.0;  // 1/Gamma underflows
    return 1.0 / std::tgamma(x);
  }
  // 1/Gamma(x) = sin(pi x) * Gamma(1-x) / pi
  const double reflected = 1.0 - x;
  const double s = detail::sin_pi(x);
  if (reflected <= kGammaOverflowEdge)
    return s * std::tgamma(reflected) / kPi;
  int sign = 0;
  const double lg = lgamma_r(reflected, &sign);
  const double mag = std::exp(lg + std::log(std::abs(s)) - std::log(kPi));
  return (s > 0.0) ? mag : -mag;
}

// log|Gamma(x)| and the sign of Gamma(x); x must not be a pole.
inline double log_abs_gamma(double x, int* sign_out = nullptr) {
  int sign = 0;
  const double lg = lgamma_r(x, &sign);
  if (sign_out) *sign_out = sign;
  return lg;
}

}  // namespace fracrheo
