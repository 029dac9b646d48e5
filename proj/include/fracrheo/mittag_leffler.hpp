#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracrheo/detail/mpfr_real.hpp"
#include "fracrheo/errors.hpp"
#include "fracrheo/gamma.hpp"

// Two-parameter Mittag-Leffler function E_{a,b}(z) = sum_j z^j / Gamma(ja+b),
// specialized for real z with the negative axis as the dominant use case.
//
// Evaluation strategy, in order, each stage with an a-posteriori error
// certificate against the requested tolerance:
//   0. closed forms for a = 1 (exponential family) and a = 2 (trig family);
//   1. double-precision Taylor sum (compensated), certified by the realized
//      round-off bound  ~eps * max|partial|;
//   2. algebraic asymptotic series  -sum_k z^{-k}/Gamma(b - a k)  at optimal
//      truncation, plus an oscillatory saddle bound for a in (2/3, 2);
//   3. extended-precision Taylor (MPFR) with working precision sized from the
//      predicted cancellation, retried at higher precision if the realized
//      cancellation eats the margin.
// A fixed |z| switch between the series and the asymptotics does not survive
// oracle validation over the full (a, b, z) domain (the Taylor partial sums
// peak near exp(|z|^(1/a)) before converging), hence the certificates.
//
// b <= 0 is never the effective series index: the first ceil(-b/a)+1 terms of
// the sum are exactly the recurrence polynomial E_{a,b} = 1/Gamma(b) + ... ,
// so the single loop below is the recurrence-regularized evaluation with the
// residual series carrying second index b + m a > 0.

namespace fracrheo {

struct MLArgs {
  double alpha;  // first index, > 0 (alpha = 0 only via the documented branch)
  double beta;   // second index, any real
  double z;      // real argument
};

// One application of the recurrence E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z).
struct MLShift {
  double leading_coefficient;  // 1/Gamma(beta)
  MLArgs shifted;              // (alpha, alpha+beta, z)
};

inline MLShift ml_recurrence_shift(const MLArgs& a) {
  return {recip_gamma(a.beta), MLArgs{a.alpha, a.alpha + a.beta, a.z}};
}

namespace detail {

struct StageResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  double err = std::numeric_limits<double>::infinity();  // absolute estimate
  bool converged = false;
};

// Number of leading terms whose Gamma argument is not yet positive: the
// ceil(-beta/alpha)+1 recurrence applications that regularize the index.
inline int ml_shift_count(double alpha, double beta) {
  if (beta > 0.0) return 0;
  return static_cast<int>(std::ceil(-beta / alpha)) + 1;
}

inline StageResult ml_taylor_double(double alpha, double beta, double z, double tol) {
  StageResult r;
  const double absz = std::abs(z);
  const int min_terms = ml_shift_count(alpha, beta) + 4;
  double sum = 0.0, comp = 0.0;  // Kahan
  double zp = 1.0;               // z^j
  double max_abs = 0.0;
  int small_in_a_row = 0;
  for (int j = 0; j <= 10000; ++j) {
    const double arg = alpha * j + beta;
    const double term = zp * recip_gamma(arg);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    max_abs = std::max({max_abs, std::abs(term), std::abs(sum)});
    // Terms are guaranteed to keep shrinking once Gamma outgrows |z|^j.
    const bool decaying = arg > 1.0 && alpha * std::log(arg) > std::log(absz);
    if (j >= min_terms && decaying && std::abs(term) < tol * std::abs(sum)) {
      if (++small_in_a_row >= 3) {
        r.value = sum;
        r.err = 1e-15 * max_abs + std::abs(term);
        r.converged = true;
        return r;
      }
    } else {
      small_in_a_row = 0;
    }
    zp *= z;
    if (!std::isfinite(zp)) break;
  }
  r.value = sum;
  r.err = std::numeric_limits<double>::infinity();
  return r;
}

// - sum_{k>=1} z^{-k} / Gamma(beta - alpha k), z < 0, optimally truncated.
// |1/Gamma(beta - alpha k)| <= Gamma(1 + alpha k - beta)/pi (reflection with
// |sin| <= 1), and that envelope is smooth in k, so it steers the truncation
// where the actual terms wiggle through the near-pole zeros of 1/Gamma.
inline StageResult ml_asymptotic(double alpha, double beta, double z, double tol) {
  StageResult r;
  const double x = -z;
  double sum = 0.0;
  double p = 1.0;
  double prev_env = std::numeric_limits<double>::infinity();
  bool reflecting = false;  // envelope growth only meaningful past the axis
  double trunc = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 4000; ++k) {
    p /= x;
    const double arg = beta - alpha * k;
    double env;
    if (arg >= 0.5) {
      env = p * std::abs(recip_gamma(arg));
    } else {
      env = p * std::exp(std::lgamma(1.0 - arg)) / kPi;
      if (reflecting && env >= prev_env) {  // past optimal truncation
        trunc = env;
        break;
      }
      reflecting = true;
      prev_env = env;
    }
    sum += ((k & 1) ? p : -p) * recip_gamma(arg);
    if (env < 0.5 * tol * std::abs(sum)) {
      trunc = env;
      break;
    }
  }
  if (!std::isfinite(trunc)) trunc = prev_env;
  // Exponentially small saddle contribution at |z|^(1/alpha) e^{+-i pi/alpha}.
  // On the negative axis it is switched on exactly for alpha >= 2/3 (the
  // Stokes condition pi <= 3 pi alpha / 2), which is also where its real
  // exponent cos(pi/alpha) turns non-positive.
  double osc = 0.0;
  if (alpha > 2.0 / 3.0) {
    const double xr = std::pow(x, 1.0 / alpha);
    osc = (2.0 / alpha) * std::pow(x, (1.0 - beta) / alpha) *
          std::exp(xr * std::cos(kPi / alpha));
  }
  r.value = sum;
  // Safety factor 2 on the truncation term: the rigorous remainder for the
  // algebraic expansion at arg z = pi is of the order of the first omitted
  // term, not exactly it.
  r.err = 2.0 * trunc + osc;
  r.converged = std::isfinite(r.err);
  return r;
}

inline constexpr mpfr_prec_t kMlPrecCap = 24576;

// Extended-precision Taylor sum.  `lognat` is the predicted natural log of the
// largest term, which sets the cancellation budget; `term_budget` bounds the
// loop (roughly 4x the saddle index).
inline StageResult ml_taylor_mpfr(double alpha, double beta, double z, double tol,
                                  double lognat, long term_budget) {
  StageResult out;
  const int min_terms = ml_shift_count(alpha, beta) + 4;
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(
      128 + 1.4427 * std::max(0.0, lognat) + 1.4427 * std::abs(std::log(tol)));
  constexpr mpfr_prec_t kPrecCap = kMlPrecCap;
  prec = std::min(prec, kPrecCap);

  while (true) {
    MpfrReal sum(prec), zp(prec), arg(prec), g(prec), term(prec), thresh(prec), zm(prec);
    mpfr_set_d(zm, z, MPFR_RNDN);
    mpfr_set_d(zp, 1.0, MPFR_RNDN);
    mpfr_set_zero(sum, 1);
    mpfr_exp_t max_exp = MPFR_EMIN_DEFAULT;
    int small_in_a_row = 0;
    bool converged = false;
    double achieved = std::numeric_limits<double>::infinity();
    const double absz = std::abs(z);

    for (long j = 0; j <= term_budget; ++j) {
      mpfr_set_d(arg, alpha, MPFR_RNDN);
      mpfr_mul_si(arg, arg, j, MPFR_RNDN);
      mpfr_add_d(arg, arg, beta, MPFR_RNDN);
      const double arg_d = mpfr_get_d(arg, MPFR_RNDN);
      if (mpfr_integer_p(arg.get()) && mpfr_sgn(arg.get()) <= 0) {
        mpfr_set_zero(term, 1);  // reciprocal-Gamma pole: term vanishes
      } else {
        mpfr_gamma(g, arg, MPFR_RNDN);
        mpfr_div(term, zp, g, MPFR_RNDN);
      }
      mpfr_add(sum, sum, term, MPFR_RNDN);
      if (mpfr_sgn(sum.get()) != 0) max_exp = std::max(max_exp, mpfr_get_exp(sum.get()));
      if (mpfr_sgn(term.get()) != 0) max_exp = std::max(max_exp, mpfr_get_exp(term.get()));

      const bool decaying = arg_d > 1.0 && alpha * std::log(arg_d) > std::log(absz);
      if (j >= min_terms && decaying && mpfr_sgn(term.get()) != 0 && mpfr_sgn(sum.get()) != 0) {
        mpfr_abs(thresh, sum, MPFR_RNDN);
        mpfr_mul_d(thresh, thresh, tol, MPFR_RNDN);
        if (mpfr_cmpabs(term, thresh) < 0) {
          if (++small_in_a_row >= 3) {
            MpfrReal at(prec), as(prec);
            mpfr_abs(at, term, MPFR_RNDN);
            mpfr_abs(as, sum, MPFR_RNDN);
            mpfr_div(at, at, as, MPFR_RNDN);
            achieved = mpfr_get_d(at, MPFR_RNDN);
            converged = true;
            break;
          }
        } else {
          small_in_a_row = 0;
        }
      } else {
        small_in_a_row = 0;
      }
      mpfr_mul(zp, zp, zm, MPFR_RNDN);
    }

    if (converged && mpfr_sgn(sum.get()) != 0) {
      // Realized cancellation: exponent headroom actually consumed.
      const mpfr_exp_t cancel = max_exp - mpfr_get_exp(sum.get());
      const mpfr_exp_t need =
          cancel + static_cast<mpfr_exp_t>(1.4427 * std::abs(std::log(tol))) + 16;
      if (need > prec && prec < kPrecCap) {
        prec = std::min<mpfr_prec_t>(kPrecCap, need + 64);
        continue;  // retry with a budget that covers what we just observed
      }
      out.value = sum.to_double();
      out.err = achieved * std::abs(out.value) +
                std::abs(out.value) * std::ldexp(1.0, static_cast<int>(cancel) - static_cast<int>(prec) + 8);
      out.converged = need <= prec;
      return out;
    }
    if (converged) {  // sum is exactly zero
      out.value = 0.0;
      out.err = 0.0;
      out.converged = true;
      return out;
    }
    out.value = sum.to_double();
    out.err = std::numeric_limits<double>::infinity();
    return out;
  }
}

// Closed forms for the exponential (alpha = 1) and trigonometric (alpha = 2)
// families.  Used only for |z| > 0.5; small |z| goes through the plain series
// where these expressions would lose digits to cancellation.
inline bool ml_closed_form(double alpha, double beta, double z, double* out) {
  constexpr double eps = 1e-13;
  const double bi = std::rint(beta);
  if (std::abs(beta - bi) > eps) return false;
  if (std::abs(alpha - 1.0) <= eps) {
    const int b = static_cast<int>(bi);
    if (b <= 1 && b >= -6) {  // E_{1,b}(z) = z^(1-b) e^z for integer b <= 1
      *out = std::pow(z, 1.0 - b) * std::exp(z);
      return true;
    }
    if (b == 2) {
      *out = std::expm1(z) / z;
      return true;
    }
    if (b == 3) {
      *out = (std::expm1(z) - z) / (z * z);
      return true;
    }
    return false;
  }
  if (std::abs(alpha - 2.0) <= eps) {
    const int b = static_cast<int>(bi);
    if (b < 1 || b > 4) return false;
    const double x = std::sqrt(std::abs(z));
    if (z < 0.0) {
      const double h = std::sin(0.5 * x);
      switch (b) {
        case 1: *out = std::cos(x); return true;
        case 2: *out = std::sin(x) / x; return true;
        case 3: *out = 2.0 * h * h / (x * x); return true;  // (1-cos x)/x^2
        case 4: *out = (x - std::sin(x)) / (x * x * x); return true;
      }
    } else {
      switch (b) {
        case 1: *out = std::cosh(x); return true;
        case 2: *out = std::sinh(x) / x; return true;
        case 3: *out = (std::cosh(x) - 1.0) / (x * x); return true;
        case 4: *out = (std::sinh(x) - x) / (x * x * x); return true;
      }
    }
  }
  return false;
}

}  // namespace detail

// E_{alpha,beta}(z) with relative error <= tol (subject to the certificate
// chain; throws convergence_error with the best estimate if no stage can
// certify).  alpha = 0 is the documented experimental geometric branch
// E_{0,beta}(z) = 1/((1-z) Gamma(beta)), accepted for z < 1 only.
inline double mittag_leffler(const MLArgs& a, double tol = 1e-13) {
  const double alpha = a.alpha, beta = a.beta, z = a.z;
  if (!(tol > 0.0)) throw std::invalid_argument("mittag_leffler: tol must be > 0");
  if (std::isnan(alpha) || std::isnan(beta) || std::isnan(z))
    throw std::invalid_argument("mittag_leffler: NaN argument");
  if (alpha < 0.0) throw std::invalid_argument("mittag_leffler: alpha must be >= 0");
  if (alpha == 0.0) {
    if (z >= 1.0)
      throw std::invalid_argument(
          "mittag_leffler: E_0 branch (experimental) requires z < 1");
    return recip_gamma(beta) / (1.0 - z);
  }
  if (z == 0.0) return recip_gamma(beta);

  double cf = 0.0;
  if (std::abs(z) > 0.5 && detail::ml_closed_form(alpha, beta, z, &cf)) return cf;

  // Saddle estimates: the Taylor partial sums peak near exp(|z|^(1/alpha)) at
  // term index ~|z|^(1/alpha)/alpha.  These size the cancellation budget and
  // the term budget of the extended-precision stage.
  const double absz = std::abs(z);
  const double saddle = absz > 1.0 ? std::pow(absz, 1.0 / alpha) : 1.0;
  const double lognat = absz > 1.0 ? saddle : 0.0;
  const double est_terms = 64.0 + (3.0 * saddle + 30.0) / alpha;

  detail::StageResult best;
  if (z > 0.0 ? lognat <= 690.0 : lognat <= 40.0) {
    const auto t = detail::ml_taylor_double(alpha, beta, z, tol);
    if (t.converged && t.err <= tol * std::abs(t.value)) return t.value;
    if (t.err < best.err) best = t;
  }
  if (z < 0.0 && -z >= 1.15) {
    const auto s = detail::ml_asymptotic(alpha, beta, z, tol);
    if (s.converged && s.err <= tol * std::abs(s.value)) return s.value;
    if (s.err < best.err) best = s;
  }
  if (1.4427 * lognat <= detail::kMlPrecCap - 256 && est_terms <= 60000.0) {
    const long budget = static_cast<long>(std::min(4.0 * est_terms + 256.0, 250000.0));
    const auto m = detail::ml_taylor_mpfr(alpha, beta, z, tol, lognat, budget);
    if (m.converged && m.err <= tol * std::abs(m.value)) return m.value;
    if (m.converged && m.value == 0.0) return 0.0;
    if (m.err < best.err) best = m;
  }

  throw convergence_error(
      "mittag_leffler: no evaluation stage certified tol=" + std::to_string(tol) +
          " at alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta) +
          " z=" + std::to_string(z),
      best.value, std::abs(best.value) > 0.0 ? best.err / std::abs(best.value) : best.err);
}

}  // namespace fracrheo
