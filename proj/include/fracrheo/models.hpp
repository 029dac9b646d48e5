#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fracrheo/errors.hpp"
#include "fracrheo/frac_calc.hpp"
#include "fracrheo/kernel.hpp"
#include "fracrheo/signal.hpp"

// The model catalog: constructors and validation, the five complex
// frequency-response functions in closed form, and the five causal
// time-response kernels.
//
// Everything two-element reduces to Scott-Blair elements in series (Maxwell
// family, stress common) or in parallel (Kelvin-Voigt family, strain common).
// The classical spring/dashpot models are the order-0/order-1 limits and are
// routed through the same formulas, so the classical rows of the catalog are
// genuine limit cases here, not separate implementations.

namespace fracrheo {

struct Hookean { double G; };                 // tau = G gamma
struct Newtonian { double eta; };             // tau = eta dgamma/dt
struct KelvinVoigt { double G, eta; };        // tau = G gamma + eta dgamma/dt
struct Maxwell { double G, eta; };            // tau + lambda dtau/dt = eta dgamma/dt
struct ScottBlair { double K, q; };           // tau = K d^q gamma / dt^q
struct FracMaxwell { double Kp, p, Kq, q; };  // two Scott-Blair in series, p <= q
struct FracKelvinVoigt { double Kp, p, Kq, q; };  // in parallel, p <= q

struct SeriesTerm { double coefficient, order; };
// sum_m a_m d^{p_m} tau = sum_n b_n d^{q_n} gamma; frequency-domain only.
struct GeneralFractional {
  std::vector<SeriesTerm> a;
  std::vector<SeriesTerm> b;
};

using RheoModel = std::variant<Hookean, Newtonian, KelvinVoigt, Maxwell, ScottBlair,
                               FracMaxwell, FracKelvinVoigt, GeneralFractional>;

enum class FreqKind {
  dynamic_modulus,
  dynamic_viscosity,
  dynamic_compliance,
  dynamic_fluidity,
  complex_creep,
};

inline const char* to_string(FreqKind k) {
  switch (k) {
    case FreqKind::dynamic_modulus: return "dynamic_modulus";
    case FreqKind::dynamic_viscosity: return "dynamic_viscosity";
    case FreqKind::dynamic_compliance: return "dynamic_compliance";
    case FreqKind::dynamic_fluidity: return "dynamic_fluidity";
    case FreqKind::complex_creep: return "complex_creep";
  }
  return "?";
}

struct ComplexResponse {
  double omega;
  std::complex<double> value;
  FreqKind kind;
};

namespace detail {

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}
inline void require_order(double v, const char* what) {
  if (!(v >= 0.0) || v > 2.0)
    throw std::invalid_argument(std::string(what) + " must lie in [0, 2]");
}

}  // namespace detail

inline void validate_model(const RheoModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Hookean>) {
          detail::require_positive(m.G, "G");
        } else if constexpr (std::is_same_v<T, Newtonian>) {
          detail::require_positive(m.eta, "eta");
        } else if constexpr (std::is_same_v<T, KelvinVoigt> || std::is_same_v<T, Maxwell>) {
          detail::require_positive(m.G, "G");
          detail::require_positive(m.eta, "eta");
        } else if constexpr (std::is_same_v<T, ScottBlair>) {
          detail::require_positive(m.K, "K");
          detail::require_order(m.q, "q");
        } else if constexpr (std::is_same_v<T, FracMaxwell> ||
                             std::is_same_v<T, FracKelvinVoigt>) {
          detail::require_positive(m.Kp, "Kp");
          detail::require_positive(m.Kq, "Kq");
          detail::require_order(m.p, "p");
          detail::require_order(m.q, "q");
          if (m.p > m.q)
            throw std::invalid_argument("element orders must satisfy p <= q");
        } else if constexpr (std::is_same_v<T, GeneralFractional>) {
          if (m.a.empty() || m.b.empty())
            throw std::invalid_argument("general model needs at least one term per side");
          for (const auto& t : m.a) {
            detail::require_positive(t.coefficient, "a_m");
            detail::require_order(t.order, "p_m");
          }
          for (const auto& t : m.b) {
            detail::require_positive(t.coefficient, "b_n");
            detail::require_order(t.order, "q_n");
          }
        }
      },
      model);
}

namespace detail {

// Normalized two-element views.  Equal orders collapse exactly to a single
// Scott-Blair element (parallel: moduli add; series: compliances add), which
// also covers the dashpot-dashpot tie where the two special-case formulas of
// the Kelvin-Voigt fluidity meet.
struct TwoElement { double Kp, p, Kq, q; };

inline std::optional<ScottBlair> as_scott_blair(const RheoModel& m) {
  if (const auto* h = std::get_if<Hookean>(&m)) return ScottBlair{h->G, 0.0};
  if (const auto* n = std::get_if<Newtonian>(&m)) return ScottBlair{n->eta, 1.0};
  if (const auto* s = std::get_if<ScottBlair>(&m)) return *s;
  if (const auto* f = std::get_if<FracMaxwell>(&m)) {
    if (f->p == f->q) return ScottBlair{f->Kp * f->Kq / (f->Kp + f->Kq), f->p};
  }
  if (const auto* k = std::get_if<FracKelvinVoigt>(&m)) {
    if (k->p == k->q) return ScottBlair{k->Kp + k->Kq, k->p};
  }
  return std::nullopt;
}

inline std::optional<TwoElement> as_series(const RheoModel& m) {
  if (const auto* mx = std::get_if<Maxwell>(&m))
    return TwoElement{mx->G, 0.0, mx->eta, 1.0};
  if (const auto* f = std::get_if<FracMaxwell>(&m)) {
    if (f->p < f->q) return TwoElement{f->Kp, f->p, f->Kq, f->q};
  }
  return std::nullopt;
}

inline std::optional<TwoElement> as_parallel(const RheoModel& m) {
  if (const auto* kv = std::get_if<KelvinVoigt>(&m))
    return TwoElement{kv->G, 0.0, kv->eta, 1.0};
  if (const auto* k = std::get_if<FracKelvinVoigt>(&m)) {
    if (k->p < k->q) return TwoElement{k->Kp, k->p, k->Kq, k->q};
  }
  return std::nullopt;
}

// (i w)^q = w^q (cos(q pi/2) + i sin(q pi/2)), w > 0.
inline std::complex<double> i_omega_pow(double omega, double q) {
  const double mag = std::pow(omega, q);
  return {mag * std::cos(0.5 * kPi * q), mag * std::sin(0.5 * kPi * q)};
}

inline void require_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw std::invalid_argument(
        "frequency-response functions are defined for omega > 0 only "
        "(omega = 0 carries distributional content)");
}

inline std::complex<double> general_ratio(const GeneralFractional& g, double omega,
                                          double num_extra, double den_extra) {
  std::complex<double> num = 0.0, den = 0.0;
  for (const auto& t : g.b) num += t.coefficient * i_omega_pow(omega, t.order + num_extra);
  for (const auto& t : g.a) den += t.coefficient * i_omega_pow(omega, t.order + den_extra);
  return num / den;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Frequency-response functions.  Each model kind uses its own closed form
// (superposition for the strain-numerator functions of the series model and
// the stress-numerator functions of the parallel model, rational forms for
// the rest), so the reciprocal/ratio identities between the five functions
// are genuine cross-checks, not definitions.
// ---------------------------------------------------------------------------

inline ComplexResponse dynamic_modulus(const RheoModel& model, double omega) {
  validate_model(model);
  detail::require_omega(omega);
  std::complex<double> v;
  if (auto sb = detail::as_scott_blair(model)) {
    v = sb->K * detail::i_omega_pow(omega, sb->q);
  } else if (auto se = detail::as_series(model)) {
    const auto sr = detail::i_omega_pow(omega, se->q - se->p);
    v = se->Kq * detail::i_omega_pow(omega, se->q) / (1.0 + (se->Kq / se->Kp) * sr);
  } else if (auto pa = detail::as_parallel(model)) {
    v = pa->Kp * detail::i_omega_pow(omega, pa->p) + pa->Kq * detail::i_omega_pow(omega, pa->q);
  } else {
    v = detail::general_ratio(std::get<GeneralFractional>(model), omega, 0.0, 0.0);
  }
  return {omega, v, FreqKind::dynamic_modulus};
}

inline ComplexResponse dynamic_compliance(const RheoModel& model, double omega) {
  validate_model(model);
  detail::require_omega(omega);
  std::complex<double> v;
  if (auto sb = detail::as_scott_blair(model)) {
    v = detail::i_omega_pow(omega, -sb->q) / sb->K;
  } else if (auto se = detail::as_series(model)) {
    v = detail::i_omega_pow(omega, -se->p) / se->Kp + detail::i_omega_pow(omega, -se->q) / se->Kq;
  } else if (auto pa = detail::as_parallel(model)) {
    v = 1.0 / (pa->Kp * detail::i_omega_pow(omega, pa->p) +
               pa->Kq * detail::i_omega_pow(omega, pa->q));
  } else {
    const auto& g = std::get<GeneralFractional>(model);
    std::complex<double> num = 0.0, den = 0.0;
    for (const auto& t : g.a) num += t.coefficient * detail::i_omega_pow(omega, t.order);
    for (const auto& t : g.b) den += t.coefficient * detail::i_omega_pow(omega, t.order);
    v = num / den;
  }
  return {omega, v, FreqKind::dynamic_compliance};
}

inline ComplexResponse dynamic_viscosity(const RheoModel& model, double omega) {
  validate_model(model);
  detail::require_omega(omega);
  std::complex<double> v;
  if (auto sb = detail::as_scott_blair(model)) {
    v = sb->K * detail::i_omega_pow(omega, sb->q - 1.0);
  } else if (auto se = detail::as_series(model)) {
    v = se->Kp * detail::i_omega_pow(omega, se->q - 1.0) /
        (detail::i_omega_pow(omega, se->q - se->p) + se->Kp / se->Kq);
  } else if (auto pa = detail::as_parallel(model)) {
    v = pa->Kp * detail::i_omega_pow(omega, pa->p - 1.0) +
        pa->Kq * detail::i_omega_pow(omega, pa->q - 1.0);
  } else {
    v = detail::general_ratio(std::get<GeneralFractional>(model), omega, 0.0, 1.0);
  }
  return {omega, v, FreqKind::dynamic_viscosity};
}

inline ComplexResponse dynamic_fluidity(const RheoModel& model, double omega) {
  validate_model(model);
  detail::require_omega(omega);
  std::complex<double> v;
  if (auto sb = detail::as_scott_blair(model)) {
    v = detail::i_omega_pow(omega, 1.0 - sb->q) / sb->K;
  } else if (auto se = detail::as_series(model)) {
    v = detail::i_omega_pow(omega, 1.0 - se->p) / se->Kp +
        detail::i_omega_pow(omega, 1.0 - se->q) / se->Kq;
  } else if (auto pa = detail::as_parallel(model)) {
    v = detail::i_omega_pow(omega, 1.0 - pa->p) /
        (pa->Kq * (detail::i_omega_pow(omega, pa->q - pa->p) + pa->Kp / pa->Kq));
  } else {
    v = detail::general_ratio(std::get<GeneralFractional>(model), omega, -1.0, 0.0);
    v = 1.0 / v;
  }
  return {omega, v, FreqKind::dynamic_fluidity};
}

inline ComplexResponse complex_creep(const RheoModel& model, double omega) {
  validate_model(model);
  detail::require_omega(omega);
  std::complex<double> v;
  if (auto sb = detail::as_scott_blair(model)) {
    v = detail::i_omega_pow(omega, -sb->q - 1.0) / sb->K;
  } else if (auto se = detail::as_series(model)) {
    v = detail::i_omega_pow(omega, -1.0 - se->p) / se->Kp +
        detail::i_omega_pow(omega, -1.0 - se->q) / se->Kq;
  } else if (auto pa = detail::as_parallel(model)) {
    v = detail::i_omega_pow(omega, -1.0 - pa->p) /
        (pa->Kq * (detail::i_omega_pow(omega, pa->q - pa->p) + pa->Kp / pa->Kq));
  } else {
    const auto& g = std::get<GeneralFractional>(model);
    std::complex<double> num = 0.0, den = 0.0;
    for (const auto& t : g.a) num += t.coefficient * detail::i_omega_pow(omega, t.order);
    for (const auto& t : g.b) den += t.coefficient * detail::i_omega_pow(omega, t.order + 1.0);
    v = num / den;
  }
  return {omega, v, FreqKind::complex_creep};
}

// Laplace-domain dynamic viscosity at real s > 0; this is what the numerical
// transform of the sampled relaxation modulus is checked against.
inline double laplace_viscosity(const RheoModel& model, double s) {
  validate_model(model);
  if (!(s > 0.0)) throw std::invalid_argument("laplace_viscosity: s must be > 0");
  if (auto sb = detail::as_scott_blair(model)) return sb->K * std::pow(s, sb->q - 1.0);
  if (auto se = detail::as_series(model))
    return se->Kp * std::pow(s, se->q - 1.0) /
           (std::pow(s, se->q - se->p) + se->Kp / se->Kq);
  if (auto pa = detail::as_parallel(model))
    return pa->Kp * std::pow(s, pa->p - 1.0) + pa->Kq * std::pow(s, pa->q - 1.0);
  const auto& g = std::get<GeneralFractional>(model);
  double num = 0.0, den = 0.0;
  for (const auto& t : g.b) num += t.coefficient * std::pow(s, t.order);
  for (const auto& t : g.a) den += t.coefficient * std::pow(s, t.order + 1.0);
  return num / den;
}

// ---------------------------------------------------------------------------
// Time-response kernels.
// ---------------------------------------------------------------------------

namespace detail {

[[noreturn]] inline void no_time_domain() {
  throw unsupported_model_error(
      "time-response kernels are not available for the general N-term model "
      "(frequency-domain only)");
}

inline TwoElement series_or_throw(const RheoModel& m) {
  if (auto se = as_series(m)) return *se;
  no_time_domain();
}

}  // namespace detail

// Stress response to an impulsive strain.  Scott-Blair: K d^q delta(t); the
// parallel model is the sum of two such; the series model needs the
// singularity extraction of the fractional derivative of its relaxation
// kernel, which yields the delta-derivative chain of orders p, 2p-q, ... .
inline TimeResponseKernel memory_function(const RheoModel& model) {
  validate_model(model);
  TimeResponseKernel k;
  k.kind = ResponseKind::memory;
  if (auto sb = detail::as_scott_blair(model)) {
    double order = sb->q;
    if (std::abs(order - std::rint(order)) <= 1e-9) order = std::rint(order);
    k.singular.push_back({sb->K, order});
    k.provenance = "M(t) = K d^q delta(t)/dt^q = K/(Gamma(-q) t^(q+1)), K=" +
                   detail::fmt(sb->K) + ", q=" + detail::fmt(sb->q);
    return k;
  }
  if (auto pa = detail::as_parallel(model)) {
    double op = pa->p, oq = pa->q;
    if (std::abs(op - std::rint(op)) <= 1e-9) op = std::rint(op);
    if (std::abs(oq - std::rint(oq)) <= 1e-9) oq = std::rint(oq);
    k.singular.push_back({pa->Kq, oq});
    k.singular.push_back({pa->Kp, op});
    detail::merge_singular(k.singular);
    k.provenance = "M(t) = Kp d^p delta(t)/dt^p + Kq d^q delta(t)/dt^q, Kp=" +
                   detail::fmt(pa->Kp) + ", p=" + detail::fmt(pa->p) +
                   ", Kq=" + detail::fmt(pa->Kq) + ", q=" + detail::fmt(pa->q);
    return k;
  }
  const auto se = detail::series_or_throw(model);
  const double r = se.q - se.p, rate = se.Kp / se.Kq;
  auto [sing, reg] = ml_frac_derivative(ml_term(se.Kp, r, r, rate), se.q);
  k.singular = std::move(sing);
  detail::merge_singular(k.singular);
  if (reg.coefficient != 0.0) k.regular.push_back(reg);
  k.provenance =
      "M(t) = Kp d^q/dt^q [ t^(q-p-1) E_{q-p,q-p}(-(Kp/Kq) t^(q-p)) ], "
      "delta chain extracted; Kp=" + detail::fmt(se.Kp) + ", p=" + detail::fmt(se.p) +
      ", Kq=" + detail::fmt(se.Kq) + ", q=" + detail::fmt(se.q);
  return k;
}

// Stress response to a unit-step strain.
inline TimeResponseKernel relaxation_modulus(const RheoModel& model) {
  validate_model(model);
  TimeResponseKernel k;
  k.kind = ResponseKind::relaxation_modulus;
  if (auto sb = detail::as_scott_blair(model)) {
    detail::add_power_or_singular(k, sb->K, -sb->q);
    k.provenance = "G(t) = K t^-q / Gamma(1-q), K=" + detail::fmt(sb->K) +
                   ", q=" + detail::fmt(sb->q);
    return k;
  }
  if (auto pa = detail::as_parallel(model)) {
    detail::add_power_or_singular(k, pa->Kq, -pa->q);
    detail::add_power_or_singular(k, pa->Kp, -pa->p);
    detail::merge_singular(k.singular);
    k.provenance = "G(t) = Kp t^-p / Gamma(1-p) + Kq t^-q / Gamma(1-q), Kp=" +
                   detail::fmt(pa->Kp) + ", p=" + detail::fmt(pa->p) +
                   ", Kq=" + detail::fmt(pa->Kq) + ", q=" + detail::fmt(pa->q);
    return k;
  }
  const auto se = detail::series_or_throw(model);
  const double r = se.q - se.p, rate = se.Kp / se.Kq;
  // Kp t^-p E_{q-p,1-p}(-(Kp/Kq) t^(q-p)); p >= 1 carries delta content.
  MLTerm raw = ml_term(se.Kp, r, 1.0 - se.p, rate);
  k.singular = extract_singular(raw);
  if (raw.coefficient != 0.0) k.regular.push_back(raw);
  k.provenance = "G(t) = Kp t^-p E_{q-p,1-p}(-(Kp/Kq) t^(q-p)), Kp=" +
                 detail::fmt(se.Kp) + ", p=" + detail::fmt(se.p) +
                 ", Kq=" + detail::fmt(se.Kq) + ", q=" + detail::fmt(se.q);
  return k;
}

// Strain response to an impulsive stress (impulse response function).
inline TimeResponseKernel impulse_fluidity(const RheoModel& model) {
  validate_model(model);
  TimeResponseKernel k;
  k.kind = ResponseKind::impulse_fluidity;
  if (auto sb = detail::as_scott_blair(model)) {
    detail::add_power_or_singular(k, 1.0 / sb->K, sb->q - 1.0);
    k.provenance = "phi(t) = t^(q-1) / (K Gamma(q)), K=" + detail::fmt(sb->K) +
                   ", q=" + detail::fmt(sb->q);
    return k;
  }
  if (auto se = detail::as_series(model)) {
    detail::add_power_or_singular(k, 1.0 / se->Kp, se->p - 1.0);
    detail::add_power_or_singular(k, 1.0 / se->Kq, se->q - 1.0);
    detail::merge_singular(k.singular);
    k.provenance =
        "phi(t) = t^(p-1)/(Kp Gamma(p)) + t^(q-1)/(Kq Gamma(q)), Kp=" +
        detail::fmt(se->Kp) + ", p=" + detail::fmt(se->p) + ", Kq=" +
        detail::fmt(se->Kq) + ", q=" + detail::fmt(se->q);
    return k;
  }
  const auto pa = detail::as_parallel(model);
  if (!pa) detail::no_time_domain();
  const double r = pa->q - pa->p, rate = pa->Kp / pa->Kq;
  k.regular.push_back(ml_term(1.0 / pa->Kq, r, pa->q, rate));
  k.provenance = "phi(t) = t^(q-1)/Kq E_{q-p,q}(-(Kp/Kq) t^(q-p)), Kp=" +
                 detail::fmt(pa->Kp) + ", p=" + detail::fmt(pa->p) +
                 ", Kq=" + detail::fmt(pa->Kq) + ", q=" + detail::fmt(pa->q);
  return k;
}

// Strain response to a unit-step stress (retardation function).
inline TimeResponseKernel creep_compliance(const RheoModel& model) {
  validate_model(model);
  TimeResponseKernel k;
  k.kind = ResponseKind::creep_compliance;
  if (auto sb = detail::as_scott_blair(model)) {
    k.regular.push_back(power_law_term(1.0 / sb->K, sb->q));
    k.provenance = "J(t) = t^q / (K Gamma(q+1)), K=" + detail::fmt(sb->K) +
                   ", q=" + detail::fmt(sb->q);
    return k;
  }
  if (auto se = detail::as_series(model)) {
    k.regular.push_back(power_law_term(1.0 / se->Kp, se->p));
    k.regular.push_back(power_law_term(1.0 / se->Kq, se->q));
    k.provenance =
        "J(t) = t^p/(Kp Gamma(p+1)) + t^q/(Kq Gamma(q+1)), Kp=" +
        detail::fmt(se->Kp) + ", p=" + detail::fmt(se->p) + ", Kq=" +
        detail::fmt(se->Kq) + ", q=" + detail::fmt(se->q);
    return k;
  }
  const auto pa = detail::as_parallel(model);
  if (!pa) detail::no_time_domain();
  const double r = pa->q - pa->p, rate = pa->Kp / pa->Kq;
  k.regular.push_back(ml_term(1.0 / pa->Kq, r, pa->q + 1.0, rate));
  k.provenance = "J(t) = t^q/Kq E_{q-p,q+1}(-(Kp/Kq) t^(q-p)), Kp=" +
                 detail::fmt(pa->Kp) + ", p=" + detail::fmt(pa->p) +
                 ", Kq=" + detail::fmt(pa->Kq) + ", q=" + detail::fmt(pa->q);
  return k;
}

// Equivalent saturating form (1/Kp)[1 - E_{q}(-(Kp/Kq) t^q)] of the parallel
// model's creep compliance when the first element is a spring (p = 0); the
// recurrence identity proves it equal to the general form above.
inline TimeResponseKernel creep_compliance_saturating_form(const RheoModel& model) {
  validate_model(model);
  const auto pa = detail::as_parallel(model);
  if (!pa || pa->p != 0.0)
    throw unsupported_model_error(
        "saturating creep form needs a spring in parallel (p = 0)");
  TimeResponseKernel k;
  k.kind = ResponseKind::creep_compliance;
  const double G = pa->Kp;
  k.regular.push_back(power_law_term(1.0 / G, 0.0));
  k.regular.push_back(ml_term(-1.0 / G, pa->q, 1.0, G / pa->Kq));
  k.provenance = "J(t) = (1/G)[1 - E_q(-(G/Kq) t^q)], G=" + detail::fmt(G) +
                 ", Kq=" + detail::fmt(pa->Kq) + ", q=" + detail::fmt(pa->q);
  return k;
}

// Strain-rate response to an impulsive stress.
inline TimeResponseKernel impulse_strain_rate(const RheoModel& model) {
  validate_model(model);
  TimeResponseKernel k;
  k.kind = ResponseKind::impulse_strain_rate;
  if (auto sb = detail::as_scott_blair(model)) {
    detail::add_power_or_singular(k, 1.0 / sb->K, sb->q - 2.0);
    k.provenance = "psi(t) = t^(q-2) / (K Gamma(q-1)), K=" + detail::fmt(sb->K) +
                   ", q=" + detail::fmt(sb->q);
    return k;
  }
  if (auto se = detail::as_series(model)) {
    detail::add_power_or_singular(k, 1.0 / se->Kp, se->p - 2.0);
    detail::add_power_or_singular(k, 1.0 / se->Kq, se->q - 2.0);
    detail::merge_singular(k.singular);
    k.provenance =
        "psi(t) = t^(p-2)/(Kp Gamma(p-1)) + t^(q-2)/(Kq Gamma(q-1)), Kp=" +
        detail::fmt(se->Kp) + ", p=" + detail::fmt(se->p) + ", Kq=" +
        detail::fmt(se->Kq) + ", q=" + detail::fmt(se->q);
    return k;
  }
  const auto pa = detail::as_parallel(model);
  if (!pa) detail::no_time_domain();
  const double r = pa->q - pa->p, rate = pa->Kp / pa->Kq;
  // (1/Kq) t^(q-2) E_{q-p,q-1}(-(Kp/Kq) t^(q-p)); q <= 1 carries delta content
  // extracted order by order (1-q, then 1-2q+p, ...).
  auto [sing, reg] = ml_frac_derivative(ml_term(1.0 / pa->Kq, r, pa->q, rate), 1.0);
  k.singular = std::move(sing);
  detail::merge_singular(k.singular);
  if (reg.coefficient != 0.0) k.regular.push_back(reg);
  k.provenance = "psi(t) = t^(q-2)/Kq E_{q-p,q-1}(-(Kp/Kq) t^(q-p)), "
                 "delta chain extracted; Kp=" + detail::fmt(pa->Kp) +
                 ", p=" + detail::fmt(pa->p) + ", Kq=" + detail::fmt(pa->Kq) +
                 ", q=" + detail::fmt(pa->q);
  return k;
}

inline TimeResponseKernel response_kernel(const RheoModel& model, ResponseKind kind) {
  switch (kind) {
    case ResponseKind::memory: return memory_function(model);
    case ResponseKind::relaxation_modulus: return relaxation_modulus(model);
    case ResponseKind::impulse_fluidity: return impulse_fluidity(model);
    case ResponseKind::creep_compliance: return creep_compliance(model);
    case ResponseKind::impulse_strain_rate: return impulse_strain_rate(model);
  }
  throw std::invalid_argument("response_kernel: bad kind");
}

// ---------------------------------------------------------------------------
// Kernel sampling.
// ---------------------------------------------------------------------------

struct KernelSamples {
  SampledSignal signal;                // role = kernel; may carry inf sentinels at t=0
  std::vector<SingularTerm> excluded;  // integer-order delta content, not sampled
  std::string provenance;
};

inline std::vector<double> evaluate_kernel(const TimeResponseKernel& kernel,
                                           std::span<const double> times,
                                           double tol = 1e-12) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(kernel.value_at(t, tol));
  return out;
}

inline KernelSamples evaluate_kernel(const TimeResponseKernel& kernel, double dt,
                                     std::size_t n, double tol = 1e-12) {
  if (!(dt > 0.0)) throw grid_error("evaluate_kernel: dt must be > 0");
  KernelSamples out;
  out.signal.dt = dt;
  out.signal.role = SignalRole::kernel;
  out.signal.values.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    out.signal.values[j] = kernel.value_at(dt * static_cast<double>(j), tol);
  out.excluded = kernel.symbolic_deltas();
  out.provenance = kernel.provenance;
  return out;
}

}  // namespace fracrheo
