#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fracrheo/errors.hpp"
#include "fracrheo/gamma.hpp"
#include "fracrheo/kernel.hpp"
#include "fracrheo/signal.hpp"

// Fractional-calculus operators: the Grunwald-Letnikov numerical derivative,
// the Riemann-Liouville integral by singularity-splitting quadrature, and the
// exact index-shift calculus of power-law x Mittag-Leffler terms including
// singularity extraction.

namespace fracrheo {

// W_0 = 1, W_k = W_{k-1} (k-1-q)/k.  These are the Gamma-quotient weights
// Gamma(k-q)/(Gamma(-q) Gamma(k+1)); the recurrence avoids Gamma overflow at
// k > 170 and is exact in exact arithmetic.  Extended-precision accumulation
// keeps the emitted doubles at the once-rounded exact values.
inline std::vector<double> gl_weights(double q, std::size_t count) {
  std::vector<double> w(count);
  if (count == 0) return w;
  long double acc = 1.0L;
  w[0] = 1.0;
  const long double ql = static_cast<long double>(q);
  for (std::size_t k = 1; k < count; ++k) {
    acc *= (static_cast<long double>(k) - 1.0L - ql) / static_cast<long double>(k);
    w[k] = static_cast<double>(acc);
  }
  return w;
}

// D^q f at each grid time, evaluating f as a callable: at time t the sum uses
// n_terms subdivisions of [0, t].  Serial over grid points; each point's sum
// has a fixed order, so results do not depend on any evaluation split.
inline std::vector<double> gl_derivative(const std::function<double(double)>& f,
                                         double q, std::span<const double> t_grid,
                                         int n_terms) {
  if (n_terms < 2) throw std::invalid_argument("gl_derivative: n_terms must be >= 2");
  if (!(q >= 0.0)) throw std::invalid_argument("gl_derivative: q must be >= 0");
  const auto w = gl_weights(q, static_cast<std::size_t>(n_terms));
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0)) {
      out.push_back(0.0);
      continue;
    }
    const double h = t / n_terms;
    double acc = 0.0;
    for (int k = 0; k < n_terms; ++k) acc += w[static_cast<std::size_t>(k)] * f(t - k * h);
    out.push_back(acc * std::pow(h, -q));
  }
  return out;
}

// D^q of a sampled causal signal on its own grid: out[j] uses all j+1 samples
// back to t = 0.  A declared initial step is part of the differentiated
// function (constant A added to every sample).
inline SampledSignal gl_derivative(const SampledSignal& f, double q) {
  if (!(f.dt > 0.0)) throw grid_error("gl_derivative: signal needs dt > 0");
  if (!(q >= 0.0)) throw std::invalid_argument("gl_derivative: q must be >= 0");
  const std::size_t n = f.size();
  const auto w = gl_weights(q, n);
  const double scale = std::pow(f.dt, -q);
  SampledSignal out;
  out.dt = f.dt;
  out.role = f.role;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= j; ++k)
      acc += w[k] * (f.values[j - k] + f.initial_step);
    out.values[j] = acc * scale;
  }
  return out;
}

// Point evaluation of D^q for a sampled signal at time t with n subdivisions;
// the step t/n must land on the signal's grid.
inline double gl_derivative_at(const SampledSignal& f, double q, double t, int n_terms) {
  if (n_terms < 2) throw std::invalid_argument("gl_derivative_at: n_terms must be >= 2");
  const double h = t / n_terms;
  const double stride = h / f.dt;
  const double rounded = std::rint(stride);
  if (std::abs(stride - rounded) > 1e-9 * std::max(1.0, std::abs(stride)) || rounded < 1.0)
    throw grid_error("gl_derivative_at: step t/n does not divide the signal grid");
  const long m = static_cast<long>(rounded);
  const long j0 = static_cast<long>(std::rint(t / f.dt));
  if (std::abs(t / f.dt - static_cast<double>(j0)) > 1e-9 || j0 >= static_cast<long>(f.size()))
    throw grid_error("gl_derivative_at: t is not a grid point of the signal");
  const auto w = gl_weights(q, static_cast<std::size_t>(n_terms));
  double acc = 0.0;
  for (int k = 0; k < n_terms; ++k) {
    const long idx = j0 - k * m;
    if (idx < 0) break;
    acc += w[static_cast<std::size_t>(k)] *
           (f.values[static_cast<std::size_t>(idx)] + f.initial_step);
  }
  return acc * std::pow(h, -q);
}

// Riemann-Liouville integral (1/Gamma(q)) int_0^t f(s) (t-s)^(q-1) ds by
// product integration: piecewise-linear f against exact moments of the
// weakly singular factor.
inline double rl_integral(const std::function<double(double)>& f, double q, double t,
                          int quad_points) {
  if (!(q > 0.0)) throw std::invalid_argument("rl_integral: q must be > 0");
  if (!(t > 0.0)) throw std::invalid_argument("rl_integral: t must be > 0");
  if (quad_points < 1) throw std::invalid_argument("rl_integral: quad_points >= 1");
  const double h = t / quad_points;
  std::vector<double> fv(static_cast<std::size_t>(quad_points) + 1);
  for (int i = 0; i <= quad_points; ++i) {
    fv[static_cast<std::size_t>(i)] = f(i * h);
    if (!std::isfinite(fv[static_cast<std::size_t>(i)]))
      throw signal_error("rl_integral: integrand not finite on the grid");
  }
  double acc = 0.0;
  for (int i = 0; i < quad_points; ++i) {
    const double a = i * h, b = (i + 1) * h;
    const double ua = t - a, ub = t - b;  // ua > ub >= 0
    const double m0 = (std::pow(ua, q) - std::pow(ub, q)) / q;
    const double m1 = t * m0 - (std::pow(ua, q + 1.0) - std::pow(ub, q + 1.0)) / (q + 1.0);
    const double fa = fv[static_cast<std::size_t>(i)];
    const double slope = (fv[static_cast<std::size_t>(i) + 1] - fa) / h;
    acc += (fa - slope * a) * m0 + slope * m1;
  }
  return acc * recip_gamma(q);
}

// I^q of a power-law x Mittag-Leffler term: both the time exponent and the
// second index shift up by q; coefficient and rate are untouched.
inline MLTerm ml_frac_integral(const MLTerm& term, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("ml_frac_integral: q must be > 0");
  MLTerm out = term;
  out.power += q;
  out.beta += q;
  return out;
}

// While the term's second index stays <= 0, split off one delta derivative
// per recurrence application (strongest singularity first): the leading
// 1/Gamma(beta) piece of each application is the order -beta delta
// derivative, and the residual keeps coefficient * (-rate), indices shifted
// up by alpha.  Terminates: each application raises beta by alpha > 0, and a
// rate-0 term dies after one emission.
inline std::vector<SingularTerm> extract_singular(MLTerm& term) {
  std::vector<SingularTerm> singular;
  while (term.beta <= 1e-12 && term.coefficient != 0.0) {
    double order = -term.beta;
    if (order < 0.0) order = 0.0;
    if (std::abs(order - std::rint(order)) <= 1e-9) order = std::rint(order);
    singular.push_back({term.coefficient, order});
    term.coefficient *= -term.rate;
    term.beta += term.alpha;
    term.power += term.alpha;
  }
  return singular;
}

// D^q of a power-law x Mittag-Leffler term: index shift by -q, then
// singularity extraction until the residual second index is positive.
inline std::pair<std::vector<SingularTerm>, MLTerm> ml_frac_derivative(
    const MLTerm& term, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("ml_frac_derivative: q must be > 0");
  MLTerm r = term;
  r.power -= q;
  r.beta -= q;
  auto singular = extract_singular(r);
  return {std::move(singular), r};
}

// Kernel-level differentiation: term-wise index shifts plus raising each
// delta derivative's order by q.
inline TimeResponseKernel kernel_derivative(const TimeResponseKernel& k, double q) {
  TimeResponseKernel out;
  out.kind = k.kind;
  out.provenance = k.provenance.empty() ? "" : "d^" + std::to_string(q) + "/dt^" +
                                                   std::to_string(q) + " of " + k.provenance;
  for (const auto& s : k.singular) out.singular.push_back({s.coefficient, s.order + q});
  for (const auto& m : k.regular) {
    auto [sing, reg] = ml_frac_derivative(m, q);
    for (auto& s : sing) out.singular.push_back(s);
    if (reg.coefficient != 0.0) out.regular.push_back(reg);
  }
  detail::merge_singular(out.singular);
  return out;
}

// Kernel-level running integral int_0^t: delta derivatives drop one order
// (an order-0 delta integrates to the unit step, i.e. a regular constant).
inline TimeResponseKernel kernel_primitive(const TimeResponseKernel& k) {
  TimeResponseKernel out;
  out.kind = k.kind;
  for (const auto& s : k.singular) {
    const double order = s.order - 1.0;
    if (order <= -1e-12) {
      detail::add_power_or_singular(out, s.coefficient, -s.order);
    } else {
      out.singular.push_back({s.coefficient, std::abs(order) <= 1e-12 ? 0.0 : order});
    }
  }
  for (const auto& m : k.regular) out.regular.push_back(ml_frac_integral(m, 1.0));
  detail::merge_singular(out.singular);
  return out;
}

}  // namespace fracrheo
