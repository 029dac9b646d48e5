#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "fracrheo/detail/mpfr_real.hpp"
#include "fracrheo/errors.hpp"
#include "fracrheo/mittag_leffler.hpp"

// Brute-force reference implementations, written against the definitions
// rather than the closed forms.  Deliberately slow and simple; these are the
// ground truth the fast paths are validated against, so they share no
// evaluation logic with them.

namespace fracrheo::oracles {

// Definitional Mittag-Leffler sum in extended precision.  Never regularizes:
// beta must be positive.  Working precision is sized from the predicted
// cancellation and re-raised if the realized cancellation consumed it.
// `max_terms` is a cost guard: the sum needs roughly |z|^(1/alpha) terms, so
// small alpha with large |z| is refused rather than left to run for hours.
inline double ml_reference(const MLArgs& a, int precision_digits,
                           long max_terms = 200000) {
  if (!(a.alpha > 0.0)) throw std::invalid_argument("ml_reference: alpha must be > 0");
  if (!(a.beta > 0.0)) throw std::invalid_argument("ml_reference: beta must be > 0");
  if (precision_digits < 1 || precision_digits > 1000)
    throw std::invalid_argument("ml_reference: bad precision_digits");

  const double absz = std::abs(a.z);
  const double saddle = absz > 1.0 ? std::pow(absz, 1.0 / a.alpha) : 1.0;
  const double lognat = absz > 1.0 ? saddle : 0.0;  // ln of the largest term
  const double est_terms = 64.0 + (3.0 * saddle + 30.0) / a.alpha;
  if (est_terms > static_cast<double>(max_terms))
    throw std::invalid_argument(
        "ml_reference: definitional sum needs ~" + std::to_string(est_terms) +
        " terms, beyond the cost guard");

  mpfr_prec_t prec = static_cast<mpfr_prec_t>(
      64 + 3.33 * precision_digits + 1.4427 * lognat);
  for (int attempt = 0; attempt < 3; ++attempt) {
    detail::MpfrReal sum(prec), zp(prec), zm(prec), arg(prec), g(prec), term(prec),
        thresh(prec);
    mpfr_set_d(zm, a.z, MPFR_RNDN);
    mpfr_set_d(zp, 1.0, MPFR_RNDN);
    mpfr_set_zero(sum.get(), 1);
    mpfr_exp_t max_exp = MPFR_EMIN_DEFAULT;
    int small = 0;
    bool done = false;
    for (long j = 0; j <= max_terms; ++j) {
      mpfr_set_d(arg, a.alpha, MPFR_RNDN);
      mpfr_mul_si(arg, arg, j, MPFR_RNDN);
      mpfr_add_d(arg, arg, a.beta, MPFR_RNDN);
      mpfr_gamma(g, arg, MPFR_RNDN);
      mpfr_div(term, zp, g, MPFR_RNDN);
      mpfr_add(sum, sum, term, MPFR_RNDN);
      if (mpfr_sgn(sum.get()) != 0) max_exp = std::max(max_exp, mpfr_get_exp(sum.get()));
      if (mpfr_sgn(term.get()) != 0) max_exp = std::max(max_exp, mpfr_get_exp(term.get()));
      const double arg_d = mpfr_get_d(arg, MPFR_RNDN);
      const bool decaying =
          arg_d > 1.0 && a.alpha * std::log(arg_d) > std::log(std::max(absz, 1e-300));
      if (decaying && mpfr_sgn(sum.get()) != 0) {
        mpfr_abs(thresh, sum, MPFR_RNDN);
        mpfr_mul_d(thresh, thresh, std::pow(10.0, -precision_digits), MPFR_RNDN);
        if (mpfr_cmpabs(term, thresh) < 0) {
          if (++small >= 3) { done = true; break; }
        } else {
          small = 0;
        }
      }
      mpfr_mul(zp, zp, zm, MPFR_RNDN);
    }
    if (!done)
      throw convergence_error("ml_reference: term cap reached", sum.to_double(),
                              std::numeric_limits<double>::infinity());
    const mpfr_exp_t cancel =
        mpfr_sgn(sum.get()) != 0 ? max_exp - mpfr_get_exp(sum.get()) : 0;
    if (cancel + static_cast<mpfr_exp_t>(3.33 * precision_digits) + 16 > prec) {
      prec = cancel + static_cast<mpfr_exp_t>(3.33 * precision_digits) + 96;
      continue;
    }
    return sum.to_double();
  }
  throw convergence_error("ml_reference: precision retries exhausted", 0.0,
                          std::numeric_limits<double>::infinity());
}

// Grunwald-Letnikov weights W_k = Gamma(k-q) / (Gamma(-q) Gamma(k+1)) in exact
// rational arithmetic, each rounded once to nearest double.
// W_k = prod_{i=1..k} (i-1-q)/i, which is exact in rationals.
namespace detail_gl {
inline std::vector<double> weights_exact_q(const mpq_t q, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  mpq_t w, f, kk;
  mpq_inits(w, f, kk, nullptr);
  mpq_set_ui(w, 1, 1);
  fracrheo::detail::MpfrReal rounded(256);
  for (int k = 0; k < count; ++k) {
    if (k > 0) {
      mpq_set_si(f, k - 1, 1);
      mpq_sub(f, f, q);  // k-1-q
      mpq_set_si(kk, k, 1);
      mpq_div(f, f, kk);
      mpq_mul(w, w, f);
    }
    mpfr_set_q(rounded, w, MPFR_RNDN);
    out.push_back(rounded.to_double());
  }
  mpq_clears(w, f, kk, nullptr);
  return out;
}
}  // namespace detail_gl

inline std::vector<double> gl_weights_exact(long q_num, long q_den, int count) {
  if (q_den <= 0) throw std::invalid_argument("gl_weights_exact: q_den must be > 0");
  mpq_t q;
  mpq_init(q);
  mpq_set_si(q, q_num, static_cast<unsigned long>(q_den));
  mpq_canonicalize(q);
  auto out = detail_gl::weights_exact_q(q, count);
  mpq_clear(q);
  return out;
}

// Same, with q taken as the exact binary rational of the given double, so the
// comparison against the double recurrence is on identical inputs.
inline std::vector<double> gl_weights_exact(double q, int count) {
  mpq_t qq;
  mpq_init(qq);
  mpq_set_d(qq, q);
  auto out = detail_gl::weights_exact_q(qq, count);
  mpq_clear(qq);
  return out;
}

// Literal Grunwald-Letnikov sum: quotient-of-Gamma weights in extended
// precision (log space), no recurrence.  D^q f at time t with n terms.
// Integer q is the pole-cancelling limit of the quotient, which is the
// binomial form Gamma(k-q)/(Gamma(-q) Gamma(k+1)) = (-1)^k C(q,k).
inline double gl_reference(const std::function<double(double)>& f, double q,
                           double t, int n) {
  if (n < 2 || n > 4096) throw std::invalid_argument("gl_reference: n in [2,4096]");
  if (!(q >= 0.0)) throw std::invalid_argument("gl_reference: q must be >= 0");
  if (!(t > 0.0)) throw std::invalid_argument("gl_reference: t must be > 0");
  const long double h = static_cast<long double>(t) / n;
  const bool integer_q = std::abs(q - std::rint(q)) < 1e-12;
  long double acc = 0.0L;
  if (integer_q) {
    const long iq = static_cast<long>(std::rint(q));
    int s1 = 0;
    const long double lg_q1 = lgammal_r(static_cast<long double>(q) + 1.0L, &s1);
    for (int k = 0; k <= std::min<long>(iq, n - 1); ++k) {
      int s2 = 0, s3 = 0;
      const long double lg_a = lgammal_r(static_cast<long double>(iq - k) + 1.0L, &s2);
      const long double lg_b = lgammal_r(static_cast<long double>(k) + 1.0L, &s3);
      const long double w = ((k & 1) ? -1.0L : 1.0L) * expl(lg_q1 - lg_a - lg_b);
      acc += w * static_cast<long double>(f(t - k * static_cast<double>(h)));
    }
    return static_cast<double>(powl(h, static_cast<long double>(-q)) * acc);
  }
  int sign_mq = 0;
  const long double lg_mq = lgammal_r(static_cast<long double>(-q), &sign_mq);
  for (int k = 0; k < n; ++k) {
    int s_num = 0, s_den = 0;
    const long double a_num = lgammal_r(static_cast<long double>(k) - q, &s_num);
    const long double a_den = lgammal_r(static_cast<long double>(k) + 1.0L, &s_den);
    const long double w = s_num * s_den * expl(a_num - a_den);
    acc += w * static_cast<long double>(f(t - k * static_cast<double>(h)));
  }
  const long double scale = sign_mq * expl(-lg_mq) * powl(h, static_cast<long double>(-q));
  return static_cast<double>(scale * acc);
}

// Midpoint-rule discrete convolution for kernels that are finite on the grid.
// kernel_mid[k] must be K((k+1/2)*dt); input is sampled at k*dt.  Returns
// y with y[j] = integral_0^{t_j} K(t_j - s) u(s) ds.
inline std::vector<double> convolution_reference(const std::vector<double>& kernel_mid,
                                                 const std::vector<double>& input,
                                                 double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("convolution_reference: dt must be > 0");
  for (double v : kernel_mid)
    if (!std::isfinite(v))
      throw std::invalid_argument("convolution_reference: singular kernel rejected");
  const std::size_t n = input.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < j; ++k) {
      const double umid = 0.5 * (input[j - k] + input[j - k - 1]);
      acc += kernel_mid[k] * umid;
    }
    y[j] = acc * dt;
  }
  return y;
}

// Fixture record: `name, inputs..., value, precision` — one line per derived
// number so reruns re-derive instead of trusting archived values.
inline void append_fixture(const std::string& path, const std::string& name,
                           const std::vector<double>& inputs, double value,
                           int precision_digits) {
  std::ofstream out(path, std::ios::app);
  out << name;
  char buf[64];
  for (double v : inputs) {
    std::snprintf(buf, sizeof buf, ", %.17g", v);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, ", %.17g, %d", value, precision_digits);
  out << buf << "\n";
}

}  // namespace fracrheo::oracles
