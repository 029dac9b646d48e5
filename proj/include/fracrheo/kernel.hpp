#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fracrheo/gamma.hpp"
#include "fracrheo/mittag_leffler.hpp"

// Building blocks of time-response kernels: power-law x Mittag-Leffler terms
// for the part that is an ordinary function of t > 0, and delta-derivative
// terms for the distributional part.

namespace fracrheo {

// f(t) = coefficient * t^power * E_{alpha,beta}(-rate * t^alpha) for t > 0.
// rate == 0 degenerates to the power law coefficient * t^power / Gamma(beta)
// since E(0) = 1/Gamma(beta).  The index-shift calculus (fractional integral
// and derivative) requires the product form power == beta - 1, which the
// factories below maintain.
struct MLTerm {
  double coefficient = 0.0;
  double power = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
  double rate = 0.0;

  // Pointwise value; t < 0 gives 0 (causality), t == 0 gives the limit
  // (+/-inf sentinel when power < 0).
  double value_at(double t, double tol = 1e-12) const {
    if (t < 0.0 || coefficient == 0.0) return 0.0;
    if (t == 0.0) {
      const double front = coefficient * recip_gamma(beta);
      if (power > 0.0 || front == 0.0) return 0.0;
      if (power == 0.0) return front;
      return std::copysign(std::numeric_limits<double>::infinity(), front);
    }
    const double pw = coefficient * std::pow(t, power);
    if (rate == 0.0) return pw * recip_gamma(beta);
    return pw * mittag_leffler({alpha, beta, -rate * std::pow(t, alpha)}, tol);
  }
};

// coefficient * t^(beta-1) * E_{alpha,beta}(-rate t^alpha)
inline MLTerm ml_term(double coefficient, double alpha, double beta, double rate) {
  return {coefficient, beta - 1.0, alpha, beta, rate};
}

// coefficient * t^power / Gamma(power+1)
inline MLTerm power_law_term(double coefficient, double power) {
  return {coefficient, power, 1.0, power + 1.0, 0.0};
}

// coefficient * d^order delta(t-0) / dt^order, order >= 0.  Integer order is
// a true distribution, carried symbolically; non-integer order is finite for
// t > 0 and materializes as coefficient / (Gamma(-order) t^(1+order)).
struct SingularTerm {
  double coefficient = 0.0;
  double order = 0.0;

  bool integer_order() const {
    return std::abs(order - std::rint(order)) <= 1e-9;
  }
  double value_at(double t) const {
    if (t <= 0.0 || integer_order()) return 0.0;
    return coefficient * recip_gamma(-order) / std::pow(t, 1.0 + order);
  }
};

enum class ResponseKind {
  memory,
  relaxation_modulus,
  impulse_fluidity,
  creep_compliance,
  impulse_strain_rate,
};

inline const char* to_string(ResponseKind k) {
  switch (k) {
    case ResponseKind::memory: return "memory";
    case ResponseKind::relaxation_modulus: return "relaxation_modulus";
    case ResponseKind::impulse_fluidity: return "impulse_fluidity";
    case ResponseKind::creep_compliance: return "creep_compliance";
    case ResponseKind::impulse_strain_rate: return "impulse_strain_rate";
  }
  return "?";
}

// One of the five causal time-response functions: a distributional part plus
// an evaluable part.  Evaluation at t < 0 is exactly 0.
struct TimeResponseKernel {
  ResponseKind kind = ResponseKind::memory;
  std::vector<SingularTerm> singular;  // decreasing order of singularity
  std::vector<MLTerm> regular;
  std::string provenance;  // closed form this kernel was built from

  // Regular part plus materialized non-integer singular part.  Integer-order
  // delta content is invisible at t > 0 by construction.
  double value_at(double t, double tol = 1e-12) const {
    if (t < 0.0) return 0.0;
    double v = 0.0;
    for (const auto& s : singular) v += s.value_at(t);
    for (const auto& m : regular) v += m.value_at(t, tol);
    return v;
  }

  std::vector<SingularTerm> symbolic_deltas() const {
    std::vector<SingularTerm> out;
    for (const auto& s : singular)
      if (s.integer_order()) out.push_back(s);
    return out;
  }
};

namespace detail {

// Sort singular terms by decreasing order, combine coincident orders, drop
// terms whose merged coefficient is negligible against the largest.
inline void merge_singular(std::vector<SingularTerm>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const SingularTerm& a, const SingularTerm& b) { return a.order > b.order; });
  std::vector<SingularTerm> merged;
  double scale = 0.0;
  for (const auto& s : terms) scale = std::max(scale, std::abs(s.coefficient));
  for (const auto& s : terms) {
    if (!merged.empty() && std::abs(merged.back().order - s.order) <= 1e-9) {
      merged.back().coefficient += s.coefficient;
    } else {
      merged.push_back(s);
    }
  }
  std::erase_if(merged, [scale](const SingularTerm& s) {
    return std::abs(s.coefficient) <= 1e-12 * scale;
  });
  terms = std::move(merged);
}

// A * t^m / Gamma(m+1): regular when locally integrable (m > -1), otherwise
// the equivalent delta derivative of order -1-m.
inline void add_power_or_singular(TimeResponseKernel& k, double coefficient, double m) {
  if (coefficient == 0.0) return;
  if (m <= -1.0 + 1e-12) {
    double order = -1.0 - m;
    if (order < 0.0) order = 0.0;
    if (std::abs(order - std::rint(order)) <= 1e-9) order = std::rint(order);
    k.singular.push_back({coefficient, order});
  } else {
    k.regular.push_back(power_law_term(coefficient, m));
  }
}

}  // namespace detail
}  // namespace fracrheo
