#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fracrheo/errors.hpp"
#include "fracrheo/frac_calc.hpp"
#include "fracrheo/models.hpp"
#include "fracrheo/signal.hpp"

// Time-domain response to arbitrary causal histories via the Boltzmann
// superposition integrals.  Scheme: product integration — the kernel's
// regular part enters through its exact running integral (the one-order-up
// Mittag-Leffler index shift), the input through piecewise-constant interval
// averages.  Delta derivatives in kernels act symbolically: integer orders as
// identity/differentiation stencils, non-integer (hypersingular) orders
// through the Grunwald-Letnikov derivative of the input — a hypersingular
// kernel is never integrated by quadrature.

namespace fracrheo {

struct ConvolutionResult {
  SampledSignal signal;
  // Impulsive content at t = 0 produced by delta-derivative kernel terms
  // acting on a declared input step; reported, never sampled.
  std::vector<SingularTerm> impulses;
  std::string provenance;
};

namespace detail {

inline void require_convolvable(const SampledSignal& s, bool needs_zero_start) {
  if (s.values.empty()) return;  // empty in, empty out
  if (!(s.dt > 0.0)) throw grid_error("convolution: signal needs dt > 0");
  for (double v : s.values)
    if (!std::isfinite(v))
      throw signal_error("convolution: non-finite or sentinel values in input");
  if (needs_zero_start && s.values.front() != 0.0)
    throw signal_error(
        "convolution: input jumps at t = 0; declare it via initial_step "
        "instead of sampling it");
}

// First derivative on the grid: central interior, one-sided second order at
// the boundaries.
inline std::vector<double> fd_derivative(const std::vector<double>& f, double dt) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) return d;
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dt);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dt);
  return d;
}

inline std::vector<double> fd_second(const std::vector<double>& f, double dt) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 4) return d;
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (dt * dt);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (dt * dt);
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (dt * dt);
  return d;
}

// Exact running integral of the kernel's regular part at grid multiples.
inline std::vector<double> regular_moments(const TimeResponseKernel& kernel, double dt,
                                           std::size_t n, double tol) {
  TimeResponseKernel reg;
  reg.regular = kernel.regular;
  const TimeResponseKernel prim = kernel_primitive(reg);
  std::vector<double> phi(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k)
    phi[k] = prim.value_at(dt * static_cast<double>(k), tol);
  return phi;
}

// O(n^2) product-integration convolution of the kernel's regular part with a
// piecewise-constant density (interval averages).  Fixed summation order:
// oldest interval first.
inline std::vector<double> convolve_regular(const std::vector<double>& phi,
                                            const std::vector<double>& density) {
  const std::size_t n = density.size() + 1;
  std::vector<double> y(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < j; ++i)
      acc += density[i] * (phi[j - i] - phi[j - i - 1]);
    y[j] = acc;
  }
  return y;
}

inline std::string scheme_note() {
  return "product integration: exact kernel moments x piecewise-constant "
         "interval averages; delta terms symbolic; hypersingular terms via "
         "Grunwald-Letnikov";
}

}  // namespace detail

// Stress history from a strain history (relaxation-modulus path):
// tau(t) = step * G(t) + int_0^t G(t-s) dgamma/ds ds, with the kernel's delta
// content acting as derivative stencils and hypersingular content as
// GL differentiation of the strain itself.
inline ConvolutionResult stress_from_strain(const RheoModel& model,
                                            const SampledSignal& strain,
                                            double tol = 1e-9) {
  detail::require_convolvable(strain, /*needs_zero_start=*/true);
  const auto G = relaxation_modulus(model);
  ConvolutionResult out;
  out.signal.dt = strain.dt;
  out.signal.role = SignalRole::stress;
  out.provenance = G.provenance + "; " + detail::scheme_note();
  const std::size_t n = strain.size();
  out.signal.values.assign(n, 0.0);
  if (n == 0) return out;

  // Piecewise-constant strain rate: exact interval averages of dgamma/dt.
  std::vector<double> rate(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    rate[i] = (strain.values[i + 1] - strain.values[i]) / strain.dt;
  const auto phi = detail::regular_moments(G, strain.dt, n, tol);
  auto y = detail::convolve_regular(phi, rate);

  const auto d1 = detail::fd_derivative(strain.values, strain.dt);
  const auto d2 = detail::fd_second(strain.values, strain.dt);
  for (const auto& s : G.singular) {
    if (s.integer_order()) {
      const long o = static_cast<long>(std::rint(s.order));
      if (o > 1)
        throw unsupported_model_error("stress_from_strain: delta order > 1");
      for (std::size_t j = 0; j < n; ++j)
        y[j] += s.coefficient * (o == 0 ? d1[j] : d2[j]);
      if (strain.initial_step != 0.0)
        out.impulses.push_back({s.coefficient * strain.initial_step,
                                static_cast<double>(o)});
    } else {
      // c d^o delta in G acting on dgamma/dt == c D^(o+1) gamma.
      SampledSignal smooth = strain;
      smooth.initial_step = 0.0;  // the step enters via step * G(t) below
      const auto d = gl_derivative(smooth, s.order + 1.0);
      for (std::size_t j = 0; j < n; ++j) y[j] += s.coefficient * d.values[j];
    }
  }
  if (strain.initial_step != 0.0) {
    for (std::size_t j = 0; j < n; ++j)
      y[j] += strain.initial_step * G.value_at(strain.dt * static_cast<double>(j), tol);
  }
  out.signal.values = std::move(y);
  return out;
}

// Memory-function path for the same quantity: tau = sum over kernel terms of
// K * D^order gamma (Grunwald-Letnikov on the grid) plus the convolution of
// the memory kernel's regular part with gamma itself.  Cross-validates the
// relaxation path.
inline ConvolutionResult stress_from_strain_memory(const RheoModel& model,
                                                   const SampledSignal& strain,
                                                   double tol = 1e-9) {
  detail::require_convolvable(strain, /*needs_zero_start=*/true);
  const auto M = memory_function(model);
  ConvolutionResult out;
  out.signal.dt = strain.dt;
  out.signal.role = SignalRole::stress;
  out.provenance = M.provenance + "; " + detail::scheme_note();
  const std::size_t n = strain.size();
  out.signal.values.assign(n, 0.0);
  if (n == 0) return out;

  // Density: interval averages of gamma (including the declared step).
  std::vector<double> avg(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    avg[i] = 0.5 * (strain.values[i] + strain.values[i + 1]) + strain.initial_step;
  const auto phi = detail::regular_moments(M, strain.dt, n, tol);
  auto y = detail::convolve_regular(phi, avg);

  for (const auto& s : M.singular) {
    const auto d = gl_derivative(strain, s.order);  // includes the step
    for (std::size_t j = 0; j < n; ++j) y[j] += s.coefficient * d.values[j];
  }
  out.signal.values = std::move(y);
  return out;
}

namespace detail {

// Shared body of the two stress-input responses (impulse fluidity kernel for
// strain, impulse strain-rate kernel for the rate).
inline ConvolutionResult stress_driven_response(const TimeResponseKernel& kernel,
                                                const SampledSignal& stress,
                                                SignalRole out_role, double tol) {
  require_convolvable(stress, /*needs_zero_start=*/true);
  ConvolutionResult out;
  out.signal.dt = stress.dt;
  out.signal.role = out_role;
  out.provenance = kernel.provenance + "; " + scheme_note();
  const std::size_t n = stress.size();
  out.signal.values.assign(n, 0.0);
  if (n == 0) return out;

  std::vector<double> avg(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    avg[i] = 0.5 * (stress.values[i] + stress.values[i + 1]);
  const auto phi = regular_moments(kernel, stress.dt, n, tol);
  auto y = convolve_regular(phi, avg);

  const auto d1 = fd_derivative(stress.values, stress.dt);
  for (const auto& s : kernel.singular) {
    if (s.integer_order()) {
      const long o = static_cast<long>(std::rint(s.order));
      if (o == 0) {
        for (std::size_t j = 0; j < n; ++j)
          y[j] += s.coefficient * (stress.values[j] + stress.initial_step);
      } else if (o == 1) {
        for (std::size_t j = 0; j < n; ++j) y[j] += s.coefficient * d1[j];
        if (stress.initial_step != 0.0)
          out.impulses.push_back({s.coefficient * stress.initial_step, 0.0});
      } else {
        throw unsupported_model_error("stress-driven response: delta order > 1");
      }
    } else {
      const auto d = gl_derivative(stress, s.order);  // includes the step
      for (std::size_t j = 0; j < n; ++j) y[j] += s.coefficient * d.values[j];
    }
  }
  if (stress.initial_step != 0.0) {
    // Step part of the input convolves to step * int_0^t K of the regular
    // part (delta terms were handled above).
    TimeResponseKernel reg;
    reg.regular = kernel.regular;
    const auto prim = kernel_primitive(reg);
    for (std::size_t j = 0; j < n; ++j)
      y[j] += stress.initial_step * prim.value_at(stress.dt * static_cast<double>(j), tol);
  }
  out.signal.values = std::move(y);
  return out;
}

}  // namespace detail

// Strain history from a stress history: gamma = phi * sigma.
inline ConvolutionResult strain_from_stress(const RheoModel& model,
                                            const SampledSignal& stress,
                                            double tol = 1e-9) {
  return detail::stress_driven_response(impulse_fluidity(model), stress,
                                        SignalRole::strain, tol);
}

// Strain-rate history from a stress history: dgamma/dt = psi * sigma.
inline ConvolutionResult strain_rate_from_stress(const RheoModel& model,
                                                 const SampledSignal& stress,
                                                 double tol = 1e-9) {
  return detail::stress_driven_response(impulse_strain_rate(model), stress,
                                        SignalRole::strain_rate, tol);
}

// max_t | int_0^t G(t-s) dJ/ds ds - 1 | on the grid dt..T.  The identity
// holds exactly for every model, so the returned residual is purely the
// quadrature error of the scheme.
//
// A singular-density x singular-kernel product (t^(q-1) against t^-q) has a
// self-similar O(1) error at the first few grid points under plain cell-size
// product integration, independent of dt.  Both J and the running moment of
// G are analytic here, so the first and last `end_cells` cells of every
// inner integral are refined on a sub-lattice of step dt/refine; with
// refine ~ 1/dt the residual converges under grid refinement everywhere
// including t = dt.  All sub-cell boundaries live on the fine lattice, so
// the two evaluation tables are shared by every output time.
inline double interconversion_residual(const RheoModel& model, double horizon,
                                       double dt, double tol = 1e-10,
                                       int end_cells = 8, int refine = 0) {
  if (!(dt > 0.0) || !(horizon > dt))
    throw std::invalid_argument("interconversion_residual: need horizon > dt > 0");
  if (refine <= 0)
    refine = std::clamp<int>(static_cast<int>(std::llround(0.096 / dt)), 16, 1024);
  const auto G = relaxation_modulus(model);
  const auto J = creep_compliance(model);
  const auto Jdot = kernel_derivative(J, 1.0);

  TimeResponseKernel Greg;
  Greg.regular = G.regular;
  const auto Gprim = kernel_primitive(Greg);

  const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
  const std::size_t R = static_cast<std::size_t>(refine);
  const double h = dt / static_cast<double>(R);
  const std::size_t nf = n * R;
  std::vector<double> Jf(nf + 1), Phif(nf + 1);
  for (std::size_t k = 0; k <= nf; ++k) {
    const double t = h * static_cast<double>(k);
    Jf[k] = J.value_at(t, tol);
    Phif[k] = k == 0 ? 0.0 : Gprim.value_at(t, tol);
  }

  // D^(1+o) J for every singular order o of G (analytic in closed form).
  struct SingAction { double coefficient; TimeResponseKernel dJ; };
  std::vector<SingAction> g_actions;
  for (const auto& s : G.singular)
    g_actions.push_back({s.coefficient, kernel_derivative(J, 1.0 + s.order)});

  double max_resid = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double t = dt * static_cast<double>(j);
    const std::size_t jf = j * R;
    double r = 0.0;
    const std::size_t first_ref = std::min<std::size_t>(end_cells, j);
    const std::size_t last_ref =
        std::max<std::size_t>(j >= static_cast<std::size_t>(end_cells)
                                  ? j - static_cast<std::size_t>(end_cells)
                                  : 0,
                              first_ref);
    // Leading cells on the fine lattice (density singular at s -> 0).
    for (std::size_t k = 0; k < first_ref * R; ++k)
      r += (Jf[k + 1] - Jf[k]) / h * (Phif[jf - k] - Phif[jf - k - 1]);
    // Interior on the coarse grid.
    for (std::size_t i = first_ref; i < last_ref; ++i)
      r += (Jf[(i + 1) * R] - Jf[i * R]) / dt *
           (Phif[(j - i) * R] - Phif[(j - i - 1) * R]);
    // Trailing cells on the fine lattice (kernel singular at s -> t).
    for (std::size_t k = last_ref * R; k < jf; ++k)
      r += (Jf[k + 1] - Jf[k]) / h * (Phif[jf - k] - Phif[jf - k - 1]);
    // Delta content of dJ/dt (a creep jump at 0) pairs with the full G.
    for (const auto& s : Jdot.singular) {
      if (s.integer_order() && std::rint(s.order) == 0.0)
        r += s.coefficient * G.value_at(t, tol);
    }
    // Singular content of G acts as D^(1+o) on J, in closed form.
    for (const auto& a : g_actions) r += a.coefficient * a.dJ.value_at(t, tol);
    max_resid = std::max(max_resid, std::abs(r - 1.0));
  }
  return max_resid;
}

// Truncated Laplace transform int_0^T K(t) e^{-st} dt of a time-response
// kernel.  Regular part by product integration with exact exponential
// averages; every delta derivative of order o contributes s^o exactly.
// Precondition s*T >= 14 keeps the tail below ~1e-6 of the head unless
// explicitly overridden; a kernel whose tail estimate is still not small
// is rejected as too fat.
inline double laplace_transform(const TimeResponseKernel& kernel, double s,
                                double horizon, int quad_points = 20000,
                                bool allow_short_horizon = false, double tol = 1e-10) {
  if (!(s > 0.0)) throw std::invalid_argument("laplace_transform: s must be > 0");
  if (!(horizon > 0.0)) throw std::invalid_argument("laplace_transform: horizon must be > 0");
  if (s * horizon < 14.0 && !allow_short_horizon)
    throw tail_error("laplace_transform: s*T < 14; tail not negligible "
                     "(pass allow_short_horizon to override)");
  TimeResponseKernel reg;
  reg.regular = kernel.regular;
  const auto prim = kernel_primitive(reg);
  const double dt = horizon / quad_points;
  double acc = 0.0;
  double phi_lo = 0.0;
  for (int i = 0; i < quad_points; ++i) {
    const double a = dt * i, b = a + dt;
    const double phi_hi = prim.value_at(b, tol);
    const double eavg = (std::exp(-s * a) - std::exp(-s * b)) / (s * dt);
    acc += eavg * (phi_hi - phi_lo);
    phi_lo = phi_hi;
  }
  for (const auto& sing : kernel.singular)
    acc += sing.coefficient * std::pow(s, sing.order);
  // Tail estimate |K(T)| e^{-sT}/s; a short-horizon override accepts
  // truncation error up to 1% instead of 1e-6, but a kernel that decays too
  // slowly for even that is rejected.
  const double tail = std::abs(kernel.value_at(horizon, tol)) * std::exp(-s * horizon) / s;
  const double budget = allow_short_horizon ? 1e-2 : 1e-6;
  if (tail > budget * std::abs(acc) + 1e-300)
    throw tail_error("laplace_transform: kernel tail beyond the horizon is not "
                     "negligible at this s");
  return acc;
}

// Same transform for a sampled signal (piecewise linear, exact exponential
// moments per cell); the horizon is the signal's extent.
inline double laplace_transform(const SampledSignal& f, double s,
                                bool allow_short_horizon = false) {
  if (!(s > 0.0)) throw std::invalid_argument("laplace_transform: s must be > 0");
  detail::require_convolvable(f, /*needs_zero_start=*/false);
  if (f.size() < 2) return 0.0;
  const double T = f.time_at(f.size() - 1);
  if (s * T < 14.0 && !allow_short_horizon)
    throw tail_error("laplace_transform: s*T < 14 (pass allow_short_horizon)");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double a = f.time_at(i), b = f.time_at(i + 1);
    const double fa = f.values[i] + f.initial_step;
    const double fb = f.values[i + 1] + f.initial_step;
    const double slope = (fb - fa) / (b - a);
    // int_a^b (fa + slope (u-a)) e^{-su} du, closed form
    const double ea = std::exp(-s * a), eb = std::exp(-s * b);
    const double m0 = (ea - eb) / s;
    const double m1 = (ea * a - eb * b) / s + (ea - eb) / (s * s) - a * m0;
    acc += fa * m0 + slope * m1;
  }
  return acc;
}

}  // namespace fracrheo
