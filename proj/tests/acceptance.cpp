// Acceptance suite: every criterion the artifact ships against, each printed
// as one pass/fail line.  Derived reference numbers are produced by the
// brute-force oracles at run time and archived as fixture records next to
// the test binary, so reruns re-derive instead of trusting stored values.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracrheo/convolution.hpp"
#include "fracrheo/io.hpp"
#include "fracrheo/models.hpp"
#include "fracrheo/oracles.hpp"
#include "fracrheo/validate.hpp"

using namespace fracrheo;

namespace {

constexpr const char* kFixturePath = "fracrheo_fixtures.txt";

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[criterion %d] %s — %s\n", criterion, pass ? "PASS" : "FAIL",
              what.c_str());
  EXPECT_TRUE(pass) << "criterion " << criterion << ": " << what;
}

struct Curve {
  std::vector<double> t, v;
};

Curve run_eval_normalized(const std::string& model_config, const std::string& function,
                          double tmin, double tmax, int points) {
  const std::string dir = ::testing::TempDir();
  const std::string cfg = dir + "accept_model.rheo";
  {
    std::ofstream f(cfg);
    f << model_config;
  }
  const std::string out = dir + "accept_curve.csv";
  std::ostringstream cmd;
  cmd << FRACRHEO_CLI << " eval " << cfg << " --function " << function
      << " --normalized --tmin " << tmin << " --tmax " << tmax << " --points "
      << points << " > " << out;
  const int rc = std::system(cmd.str().c_str());
  EXPECT_EQ(WEXITSTATUS(rc), 0) << cmd.str();
  Curve c;
  std::ifstream f(out);
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#' || line == "t,value") continue;
    const auto comma = line.find(',');
    c.t.push_back(std::stod(line.substr(0, comma)));
    c.v.push_back(std::stod(line.substr(comma + 1)));
  }
  return c;
}

bool non_increasing(const std::vector<double>& v, double slack = 1e-12) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + slack) return false;
  return true;
}

bool non_decreasing(const std::vector<double>& v, double slack = 1e-12) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1] - slack) return false;
  return true;
}

int sign_changes(const std::vector<double>& v) {
  int c = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] * v[i - 1] < 0.0) ++c;
  return c;
}

}  // namespace

TEST(Acceptance, Criterion1_MittagLefflerBattery) {
  std::remove(kFixturePath);
  std::mt19937_64 rng(20240801);
  std::uniform_real_distribution<double> z_exp(-30.0, 5.0), x_trig(1e-3, 20.0);
  double ident_err = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double z = z_exp(rng);
    ident_err = std::max(ident_err,
                         std::abs(mittag_leffler({1.0, 1.0, z}) - std::exp(z)) /
                             std::exp(z));
    if (std::abs(z) > 1e-8) {
      const double w = std::expm1(z) / z;
      ident_err = std::max(ident_err,
                           std::abs(mittag_leffler({1.0, 2.0, z}) - w) / std::abs(w));
    }
    const double x = x_trig(rng);
    ident_err =
        std::max(ident_err, std::abs(mittag_leffler({2.0, 1.0, -x * x}) - std::cos(x)));
    ident_err = std::max(
        ident_err, std::abs(mittag_leffler({2.0, 2.0, -x * x}) - std::sin(x) / x));
  }

  // Evaluator vs the definitional-series oracle.  Draws outside the oracle's
  // desk-scale envelope (the sum needs ~|z|^(1/alpha) terms) are redrawn;
  // alpha >= 0.5 keeps the full z in [-30, 0] range.
  std::uniform_real_distribution<double> da(1e-2, 2.0), db(1e-3, 3.0), dz(-30.0, 0.0);
  double oracle_err = 0.0;
  int done = 0;
  while (done < 500) {
    const double a = da(rng), b = db(rng), z = dz(rng);
    const double envelope =
        std::min({std::pow(1000.0, a), std::pow(8000.0 * a, a), 30.0});
    if (-z > envelope) continue;
    const double ref = oracles::ml_reference({a, b, z}, 15);
    const double got = mittag_leffler({a, b, z});
    oracle_err =
        std::max(oracle_err, std::abs(got - ref) / std::max(std::abs(ref), 1e-280));
    oracles::append_fixture(kFixturePath, "ml_reference", {a, b, z}, ref, 15);
    ++done;
  }
  report(1, ident_err <= 1e-10 && oracle_err <= 1e-11,
         "ML identity battery max rel err " + format_double(ident_err) +
             " (<=1e-10); evaluator vs oracle on 500 draws " +
             format_double(oracle_err) + " (<=1e-11)");
}

TEST(Acceptance, Criterion2_ScottBlairClosedForms) {
  double err = 0.0;
  for (double q : {0.3, 0.5, 1.0, 1.5, 2.0}) {
    const auto G = relaxation_modulus(ScottBlair{1.0, q});
    const auto J = creep_compliance(ScottBlair{1.0, q});
    const bool integer_q = std::abs(q - std::rint(q)) < 1e-12;
    for (double t : {0.5, 1.0, 2.0}) {
      const double gw = recip_gamma(1.0 - q) * std::pow(t, -q);
      const double jw = recip_gamma(1.0 + q) * std::pow(t, q);
      err = std::max(err, std::abs(G.value_at(t) - gw));
      err = std::max(err, std::abs(J.value_at(t) - jw));
      if (!integer_q) {
        const double prod = std::sin(kPi * q) / (kPi * q);
        err = std::max(err, std::abs(G.value_at(t) * J.value_at(t) - prod));
      }
    }
  }
  report(2, err <= 1e-12,
         "Scott-Blair G, J and product law, max err " + format_double(err) +
             " (<=1e-12)");
}

TEST(Acceptance, Criterion3_ClassicalLimits) {
  const double G = 2.0, eta = 3.0, l = eta / G;
  const RheoModel fm = FracMaxwell{G, 0.0, eta, 1.0};
  const RheoModel kv = FracKelvinVoigt{G, 0.0, eta, 1.0};
  double err = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double t = 0.3 * i;
    err = std::max(err,
                   std::abs(relaxation_modulus(fm).value_at(t) - G * std::exp(-t / l)));
    err = std::max(err, std::abs(creep_compliance(fm).value_at(t) - (1.0 + t / l) / G));
    err = std::max(err,
                   std::abs(memory_function(fm).value_at(t) + (G / l) * std::exp(-t / l)));
    err = std::max(err, std::abs(impulse_fluidity(fm).value_at(t) - 1.0 / eta));
    err = std::max(err, std::abs(impulse_strain_rate(fm).value_at(t)));  // deltas only
    err = std::max(err, std::abs(relaxation_modulus(kv).value_at(t) - G));
    err = std::max(err,
                   std::abs(impulse_fluidity(kv).value_at(t) - std::exp(-t / l) / eta));
    err = std::max(err, std::abs(creep_compliance(kv).value_at(t) -
                                 (1.0 - std::exp(-t / l)) / G));
    err = std::max(err, std::abs(impulse_strain_rate(kv).value_at(t) +
                                 std::exp(-t / l) / (eta * l)));
    err = std::max(err, std::abs(memory_function(kv).value_at(t)));  // deltas only
  }
  // Delta contents of the Maxwell limit: phi has delta/G, psi has delta/eta
  // and delta'/G, M has G delta.
  {
    const auto phi_d = impulse_fluidity(fm).symbolic_deltas();
    const auto psi_d = impulse_strain_rate(fm).symbolic_deltas();
    const auto mem_d = memory_function(fm).symbolic_deltas();
    err = std::max(err, std::abs(phi_d.at(0).coefficient - 1.0 / G));
    err = std::max(err, std::abs(psi_d.at(0).coefficient - 1.0 / G));  // order 1
    err = std::max(err, std::abs(psi_d.at(0).order - 1.0));
    err = std::max(err, std::abs(psi_d.at(1).coefficient - 1.0 / eta));
    err = std::max(err, std::abs(mem_d.at(0).coefficient - G));
  }

  // Inerter limits (q = 2): cos/sin closed forms and the zero crossing of
  // the relaxation modulus at w_R t = pi/2.
  const double m = 0.5, wr = std::sqrt(G / m);
  const RheoModel inerter = FracMaxwell{G, 0.0, m, 2.0};
  const auto Gk = relaxation_modulus(inerter);
  const auto Mk = memory_function(inerter);
  for (int i = 1; i <= 20; ++i) {
    const double t = 0.25 * i;
    err = std::max(err, std::abs(Gk.value_at(t) - G * std::cos(wr * t)));
    err = std::max(err, std::abs(Mk.value_at(t) + G * wr * std::sin(wr * t)));
  }
  // Bisection for the first zero crossing of G(t).
  double lo = 0.5 * kPi / wr * 0.5, hi = 0.5 * kPi / wr * 1.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (Gk.value_at(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double crossing = 0.5 * (lo + hi);
  const double crossing_err = std::abs(crossing * wr - 0.5 * kPi);
  report(3, err <= 1e-10 && crossing_err <= 1e-9,
         "classical/inerter limit rows max err " + format_double(err) +
             " (<=1e-10); zero crossing offset " + format_double(crossing_err) +
             " (<=1e-9)");
}

TEST(Acceptance, Criterion4_FigureReproduction) {
  bool ok = true;
  std::string detail;

  auto series_cfg = [](double Kp, double p, double Kq, double q) {
    std::ostringstream os;
    os << "model = frac_maxwell\nKp = " << Kp << "\np = " << p << "\nKq = " << Kq
       << "\nq = " << q << "\n";
    return os.str();
  };
  auto parallel_cfg = [](double Kp, double p, double Kq, double q) {
    std::ostringstream os;
    os << "model = frac_kelvin_voigt\nKp = " << Kp << "\np = " << p << "\nKq = " << Kq
       << "\nq = " << q << "\n";
    return os.str();
  };

  auto finite_curve = [](const Curve& c) {
    if (c.v.empty()) return false;
    for (double v : c.v)
      if (!std::isfinite(v)) return false;
    return true;
  };

  // Normalized memory of the spring--Scott-Blair series fluid: the finite
  // part is negative and decays, so its magnitude is non-increasing for
  // q <= 1; the inertial members of the family just need to come out finite.
  for (double q : {0.5, 1.0}) {
    auto c = run_eval_normalized(series_cfg(1, 0, 1, q), "memory", 0.05, 3.0, 128);
    for (auto& v : c.v) v = std::abs(v);
    if (!non_increasing(c.v)) { ok = false; detail += " fig4-left(q=" + format_double(q) + ")"; }
  }
  for (double q : {1.5, 1.8, 2.0}) {
    const auto c = run_eval_normalized(series_cfg(1, 0, 1, q), "memory", 0.05, 3.0, 128);
    if (!finite_curve(c)) { ok = false; detail += " fig4-left-inertial(q=" + format_double(q) + ")"; }
  }
  // Normalized memory of the springpot--dashpot series fluid.
  for (double p : {0.2, 0.4, 0.6}) {
    auto c = run_eval_normalized(series_cfg(1, p, 1, 1), "memory", 0.05, 3.0, 128);
    for (auto& v : c.v) v = std::abs(v);
    if (!non_increasing(c.v)) { ok = false; detail += " fig4-right(p=" + format_double(p) + ")"; }
  }
  // Normalized relaxation modulus, spring--Scott-Blair series: monotone for
  // q <= 1, oscillatory (>= 1 sign change) for q in (1, 2].
  for (double q : {0.5, 1.0}) {
    const auto c = run_eval_normalized(series_cfg(1, 0, 1, q), "relaxation", 0.02, 10.0, 256);
    if (!non_increasing(c.v)) { ok = false; detail += " fig5-left(q=" + format_double(q) + ")"; }
  }
  for (double q : {1.5, 1.8, 2.0}) {
    const auto c = run_eval_normalized(series_cfg(1, 0, 1, q), "relaxation", 0.02, 10.0, 512);
    if (sign_changes(c.v) < 1) { ok = false; detail += " fig5-osc(q=" + format_double(q) + ")"; }
  }
  // Normalized relaxation modulus, springpot--dashpot series (orders <= 1).
  for (double p : {0.0, 0.2, 0.5, 0.8}) {
    const auto c = run_eval_normalized(series_cfg(1, p, 1, 1), "relaxation", 0.02, 10.0, 256);
    if (!non_increasing(c.v)) { ok = false; detail += " fig5-right(p=" + format_double(p) + ")"; }
  }
  // Normalized impulse fluidity of the Scott-Blair--dashpot parallel
  // connection: monotone non-increasing while both orders are <= 1; the
  // beyond-dashpot members (second element order > 1, rising saturating
  // curves) must come out finite and non-decreasing.
  for (double p : {0.0, 0.5}) {
    const auto c = run_eval_normalized(parallel_cfg(1, p, 1, 1), "fluidity", 0.02, 10.0, 256);
    if (!non_increasing(c.v)) { ok = false; detail += " fig6(p=" + format_double(p) + ")"; }
  }
  for (double P : {1.5, 2.0}) {
    const auto c = run_eval_normalized(parallel_cfg(1, 1, 1, P), "fluidity", 0.02, 10.0, 256);
    if (!finite_curve(c) || !non_decreasing(c.v, 1e-9))
      { ok = false; detail += " fig6-beyond(P=" + format_double(P) + ")"; }
  }
  // Normalized creep compliance: spring--Scott-Blair parallel (left) and
  // springpot--dashpot parallel (right); for p, q <= 1 the curves start at 0
  // and are non-decreasing.
  for (double q : {0.2, 0.5, 1.0}) {
    const auto c = run_eval_normalized(parallel_cfg(1, 0, 1, q), "creep", 0.0, 4.0, 128);
    if (std::abs(c.v.front()) > 1e-12 || !non_decreasing(c.v)) {
      ok = false;
      detail += " fig7-left(q=" + format_double(q) + ")";
    }
  }
  for (double q : {1.5, 2.0}) {  // inertial branch still starts at zero
    const auto c = run_eval_normalized(parallel_cfg(1, 0, 1, q), "creep", 0.0, 4.0, 128);
    if (std::abs(c.v.front()) > 1e-12) { ok = false; detail += " fig7-start(q=" + format_double(q) + ")"; }
  }
  for (double p : {0.2, 0.4, 0.6, 0.8}) {
    const auto c = run_eval_normalized(parallel_cfg(1, p, 1, 1), "creep", 0.0, 4.0, 128);
    if (std::abs(c.v.front()) > 1e-12 || !non_decreasing(c.v)) {
      ok = false;
      detail += " fig7-right(p=" + format_double(p) + ")";
    }
  }
  report(4, ok, detail.empty() ? "normalized curve families reproduce the "
                                 "monotone/oscillatory/creep properties"
                               : "failures:" + detail);
}

TEST(Acceptance, Criterion5_GlVersusClosedForm) {
  // gamma(t) = t through the half-order element via the memory/GL path.
  auto rms_error = [](std::size_t n) {
    SampledSignal strain;
    strain.dt = 10.0 / static_cast<double>(n);
    strain.values.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) strain.values[i] = strain.time_at(i);
    const auto r = stress_from_strain_memory(ScottBlair{1.0, 0.5}, strain);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double t = strain.time_at(i);
      if (t < 0.1) continue;
      const double want = std::pow(t, 0.5) * 1.1283791670955126;
      num += (r.signal.values[i] - want) * (r.signal.values[i] - want);
      den += want * want;
    }
    return std::sqrt(num / den);
  };
  const double e14 = rms_error(1 << 14);
  const double e15 = rms_error(1 << 15);
  report(5, e14 <= 1e-2 && e14 / e15 >= 1.8,
         "GL path RMS " + format_double(e14) + " (<=1e-2) at n=2^14; halving factor " +
             format_double(e14 / e15) + " (>=1.8)");
}

TEST(Acceptance, Criterion6_Interconversion) {
  const double r_mx = interconversion_residual(Maxwell{2.0, 4.0}, 2.0, 1e-3);
  const double r_kv = interconversion_residual(KelvinVoigt{2.0, 4.0}, 2.0, 1e-3);
  const double r_fm =
      interconversion_residual(FracMaxwell{1.0, 0.3, 1.0, 0.9}, 2.0, 1e-3);
  const double r_fk =
      interconversion_residual(FracKelvinVoigt{1.0, 0.2, 1.0, 0.8}, 2.0, 1e-3);
  const double coarse =
      interconversion_residual(FracMaxwell{1.0, 0.3, 1.0, 0.9}, 1.0, 2e-3);
  const double fine =
      interconversion_residual(FracMaxwell{1.0, 0.3, 1.0, 0.9}, 1.0, 1e-3);
  const bool ok = r_mx <= 1e-6 && r_kv <= 1e-6 && r_fm <= 1e-2 && r_fk <= 1e-2 &&
                  coarse / fine >= 1.7;
  report(6, ok,
         "residuals: Maxwell " + format_double(r_mx) + ", KV " + format_double(r_kv) +
             " (<=1e-6); fracMaxwell " + format_double(r_fm) + ", fracKV " +
             format_double(r_fk) + " (<=1e-2); refinement factor " +
             format_double(coarse / fine) + " (>=1.7)");
}

TEST(Acceptance, Criterion7_LaplaceCrossCheck) {
  double err = 0.0;
  const std::vector<RheoModel> models = {ScottBlair{1.0, 0.5},
                                         FracMaxwell{1.0, 0.2, 1.0, 0.7},
                                         FracKelvinVoigt{1.0, 0.2, 1.0, 0.8}};
  for (const auto& m : models) {
    const auto G = relaxation_modulus(m);
    for (double s : {1.0, 2.0, 5.0}) {
      const double want = laplace_viscosity(m, s);
      const double got = laplace_transform(G, s, 14.0 / s, 20000, true);
      err = std::max(err, std::abs(got - want) / std::abs(want));
      oracles::append_fixture(kFixturePath, "laplace_viscosity_closed_form", {s}, want,
                              15);
    }
  }
  report(7, err <= 1e-3,
         "sampled-relaxation transform vs closed-form viscosity, max rel err " +
             format_double(err) + " (<=1e-3)");
}

TEST(Acceptance, Criterion8_SingularityExtraction) {
  struct Case {
    double p, q;
    std::vector<double> leading_orders;  // as stated for the criterion
    std::size_t full_count;              // per the until-positive rule
  };
  const std::vector<Case> cases = {
      {0.3, 1.0, {0.3}, 1},
      {0.6, 1.0, {0.6, 0.2}, 2},
      {0.7, 0.9, {0.7, 0.5}, 4},  // continues 0.3, 0.1 until the index is positive
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const double rate = 1.0, alpha = c.q - c.p;
    const MLTerm base = ml_term(1.0, alpha, alpha, rate);
    auto [sing, reg] = ml_frac_derivative(base, c.q);
    if (sing.size() != c.full_count) {
      ok = false;
      detail += " count(p=" + format_double(c.p) + ")";
    }
    for (std::size_t i = 0; i < c.leading_orders.size() && i < sing.size(); ++i)
      if (std::abs(sing[i].order - c.leading_orders[i]) > 1e-10) {
        ok = false;
        detail += " order(p=" + format_double(c.p) + ",i=" + std::to_string(i) + ")";
      }
    // Full chain follows orders p, 2p-q, 3p-2q, ... (one alpha down per step).
    for (std::size_t i = 0; i < sing.size(); ++i) {
      const double expect = c.p - static_cast<double>(i) * alpha;
      if (std::abs(sing[i].order - expect) > 1e-10) {
        ok = false;
        detail += " chain(p=" + format_double(c.p) + ")";
      }
    }
    // Reassembled representation vs the direct regularized evaluation of the
    // index-shifted term.
    double direct_err = 0.0;
    for (double t : {0.1, 0.3, 1.0, 3.0, 10.0}) {
      double assembled = reg.value_at(t);
      for (const auto& s : sing) assembled += s.value_at(t);
      const double direct =
          std::pow(t, alpha - c.q - 1.0) *
          mittag_leffler({alpha, alpha - c.q, -rate * std::pow(t, alpha)});
      direct_err = std::max(direct_err, std::abs(assembled - direct));
    }
    if (direct_err > 1e-6) {
      ok = false;
      detail += " reassembly(p=" + format_double(c.p) + ", err=" +
                format_double(direct_err) + ")";
    }
    // Substance: the numerical GL derivative of the sampled pre-extraction
    // term converges to the reassembled kernel.  The convergence rate is
    // h^alpha (the input behaves like t^(alpha-1) at the origin), so for the
    // third case only the trend is testable at desk scale; the 1e-6 identity
    // itself is covered by the direct-evaluation check above.
    auto f = [&](double t) { return base.value_at(t, 1e-9); };
    double gl_err_c = 0.0, gl_err_f = 0.0;
    for (double t : {0.5, 2.0}) {
      const std::vector<double> grid = {t};
      double assembled = reg.value_at(t);
      for (const auto& s : sing) assembled += s.value_at(t);
      const double scale = std::max(1.0, std::abs(assembled));
      gl_err_c = std::max(gl_err_c,
                          std::abs(gl_derivative(f, c.q, grid, 1024)[0] - assembled) / scale);
      gl_err_f = std::max(gl_err_f,
                          std::abs(gl_derivative(f, c.q, grid, 4096)[0] - assembled) / scale);
    }
    const double expected_ratio = std::pow(4.0, -alpha);  // h^alpha convergence
    if (!(gl_err_f < gl_err_c && gl_err_f <= 2.0 * expected_ratio * gl_err_c &&
          gl_err_f < 0.25)) {
      ok = false;
      detail += " gl(p=" + format_double(c.p) + ", c=" + format_double(gl_err_c) +
                ", f=" + format_double(gl_err_f) + ")";
    }
  }
  report(8, ok,
         detail.empty()
             ? "extracted orders match (p / p,2p-q / chain), reassembly within 1e-6, "
               "GL converges to the extracted representation"
             : "failures:" + detail);
}

TEST(Acceptance, Criterion9_CreepEquivalence) {
  double err = 0.0;
  for (double q : {0.4, 0.9, 1.5}) {
    const FracKelvinVoigt kv{2.0, 0.0, 1.5, q};
    const auto a = creep_compliance(kv);
    const auto b = creep_compliance_saturating_form(kv);
    for (int i = 1; i <= 50; ++i) {
      const double t = 0.15 * i;
      err = std::max(err, std::abs(a.value_at(t) - b.value_at(t)));
    }
  }
  report(9, err <= 1e-10,
         "Kelvin-Voigt creep: Mittag-Leffler form vs saturating form, max err " +
             format_double(err) + " (<=1e-10)");
}
