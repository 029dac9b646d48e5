// fracrheo: evaluate fractional rheological model responses on grids, run
// convolutions on CSV signals, and run the built-in validation suites.
//
// Exit codes: 0 ok; 1 validation failure or internal error; 2 config/usage
// parse error; 3 unsupported model/function pair; 4 non-uniform input grid;
// 5 sentinel or non-finite input values.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracrheo/convolution.hpp"
#include "fracrheo/io.hpp"
#include "fracrheo/models.hpp"
#include "fracrheo/validate.hpp"

namespace {

using namespace fracrheo;

RheoModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open model config");
  return parse_model_config(in, path);
}

std::vector<double> make_grid(double tmin, double tmax, int points, bool log_spacing) {
  if (points < 1) throw parse_error("grid needs at least one point");
  if (log_spacing && !(tmin > 0.0))
    throw parse_error("log spacing needs tmin > 0");
  if (!log_spacing && !(tmin >= 0.0)) throw parse_error("need tmin >= 0");
  std::vector<double> t(static_cast<std::size_t>(points));
  if (points == 1) {
    t[0] = tmin;
    return t;
  }
  if (!(tmax > tmin)) throw parse_error("need tmax > tmin");
  if (log_spacing) {
    const double la = std::log(tmin), lb = std::log(tmax);
    for (int i = 0; i < points; ++i)
      t[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (points - 1));
  } else {
    for (int i = 0; i < points; ++i)
      t[static_cast<std::size_t>(i)] = tmin + (tmax - tmin) * i / (points - 1);
  }
  return t;
}

ResponseKind parse_function(const std::string& f) {
  if (f == "memory") return ResponseKind::memory;
  if (f == "relaxation") return ResponseKind::relaxation_modulus;
  if (f == "fluidity") return ResponseKind::impulse_fluidity;
  if (f == "creep") return ResponseKind::creep_compliance;
  if (f == "strain-rate") return ResponseKind::impulse_strain_rate;
  throw parse_error("unknown --function: " + f);
}

// Dimensionless-axis emission: theta = rate^(1/alpha) * t with
// rate = Kp/Kq and alpha = q - p, and a per-function modulus scale, so the
// emitted curves are the standard normalized families of the two-element
// models.  Supported where a dimensionless form exists: series model with
// memory/relaxation, parallel model with fluidity/creep.
struct Normalization {
  double time_scale;   // t = time_scale * theta
  double value_scale;  // emitted = value_scale * F(t)
  std::string axis;
};

Normalization make_normalization(const RheoModel& model, ResponseKind kind) {
  const auto series = detail::as_series(model);
  const auto parallel = detail::as_parallel(model);
  const auto two = series ? series : parallel;
  if (!two)
    throw unsupported_model_error(
        "--normalized needs a two-element model with distinct orders");
  const double rate = two->Kp / two->Kq;
  const double alpha = two->q - two->p;
  const double tstar = std::pow(rate, -1.0 / alpha);
  Normalization n;
  n.time_scale = tstar;
  n.axis = "theta = (Kp/Kq)^(1/(q-p)) * t";
  if (series && kind == ResponseKind::memory) {
    n.value_scale = std::pow(tstar, 1.0 + two->p) / two->Kp;
    return n;
  }
  if (series && kind == ResponseKind::relaxation_modulus) {
    n.value_scale = std::pow(tstar, two->p) / two->Kp;
    return n;
  }
  if (parallel && kind == ResponseKind::impulse_fluidity) {
    n.value_scale = two->Kq * std::pow(tstar, 1.0 - two->q);
    return n;
  }
  if (parallel && kind == ResponseKind::creep_compliance) {
    n.value_scale = two->Kq * std::pow(tstar, -two->q);
    return n;
  }
  throw unsupported_model_error(
      "--normalized supports memory/relaxation of the series model and "
      "fluidity/creep of the parallel model");
}

int cmd_eval(const std::string& config, const std::string& function, double tmin,
             double tmax, int points, const std::string& spacing, bool normalized) {
  const auto model = load_model(config);
  const auto kind = parse_function(function);
  const auto kernel = response_kernel(model, kind);
  auto grid = make_grid(tmin, tmax, points, spacing == "log");

  std::vector<std::pair<std::string, std::string>> comments;
  comments.emplace_back("model", model_name(model));
  comments.emplace_back("function", to_string(kind));
  comments.emplace_back("form", kernel.provenance);
  // Unit tags only; the arithmetic itself is unit-blind (the SI unit of a
  // Scott-Blair constant, Pa s^order, depends on its own order).
  comments.emplace_back("units", "t in s; element constants in Pa s^order");
  for (const auto& d : kernel.symbolic_deltas())
    comments.emplace_back("delta", format_double(d.coefficient) +
                                       " * d^" + format_double(d.order) +
                                       " delta(t)/dt^" + format_double(d.order) +
                                       " (not sampled)");
  std::vector<double> values;
  if (normalized) {
    const auto norm = make_normalization(model, kind);
    comments.emplace_back("normalized", norm.axis);
    comments.emplace_back("time_scale", format_double(norm.time_scale));
    comments.emplace_back("value_scale", format_double(norm.value_scale));
    std::vector<double> real_t(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) real_t[i] = grid[i] * norm.time_scale;
    values = evaluate_kernel(kernel, real_t);
    for (auto& v : values) v *= norm.value_scale;
  } else {
    values = evaluate_kernel(kernel, grid);
  }
  write_curve_csv(std::cout, grid, values, comments);
  return 0;
}

int cmd_freq(const std::string& config, const std::string& function, double wmin,
             double wmax, int points) {
  const auto model = load_model(config);
  if (!(wmin > 0.0)) throw parse_error("need wmin > 0");
  const auto grid = make_grid(wmin, wmax, points, /*log_spacing=*/true);
  std::function<ComplexResponse(const RheoModel&, double)> fn;
  if (function == "modulus") fn = dynamic_modulus;
  else if (function == "viscosity") fn = dynamic_viscosity;
  else if (function == "compliance") fn = dynamic_compliance;
  else if (function == "fluidity") fn = dynamic_fluidity;
  else if (function == "creep") fn = complex_creep;
  else throw parse_error("unknown --function: " + function);

  std::cout << "# model = " << model_name(model) << "\n";
  std::cout << "# function = " << function << "\n";
  std::cout << "omega,real,imag\n";
  for (double w : grid) {
    const auto r = fn(model, w);
    std::cout << format_double(w) << "," << format_double(r.value.real()) << ","
              << format_double(r.value.imag()) << "\n";
  }
  return 0;
}

int cmd_convolve(const std::string& config, const std::string& input,
                 const std::string& direction, double step_amplitude) {
  const auto model = load_model(config);
  std::ifstream in(input);
  if (!in) throw parse_error(input + ": cannot open input CSV");
  auto signal = read_signal_csv(in);
  signal.initial_step = step_amplitude;

  ConvolutionResult result;
  if (direction == "stress-from-strain") {
    signal.role = SignalRole::strain;
    result = stress_from_strain(model, signal);
  } else if (direction == "strain-from-stress") {
    signal.role = SignalRole::stress;
    result = strain_from_stress(model, signal);
  } else if (direction == "strainrate-from-stress") {
    signal.role = SignalRole::stress;
    result = strain_rate_from_stress(model, signal);
  } else {
    throw parse_error("unknown --direction: " + direction);
  }

  std::vector<std::pair<std::string, std::string>> comments;
  comments.emplace_back("model", model_name(model));
  comments.emplace_back("direction", direction);
  comments.emplace_back("output_role", to_string(result.signal.role));
  comments.emplace_back("kernel", result.provenance);
  if (step_amplitude != 0.0)
    comments.emplace_back("input_step", format_double(step_amplitude));
  for (const auto& imp : result.impulses)
    comments.emplace_back("impulse_at_origin",
                          format_double(imp.coefficient) + " * d^" +
                              format_double(imp.order) + " delta(t)/dt^" +
                              format_double(imp.order));
  write_signal_csv(std::cout, result.signal, comments);
  return 0;
}

int cmd_validate(const std::string& suite, bool json) {
  std::optional<double> tol_override;
  if (const char* env = std::getenv("FRACRHEO_TOL")) {
    try {
      tol_override = std::stod(env);
    } catch (...) {
      throw parse_error("FRACRHEO_TOL is not a number");
    }
  }
  const auto results = run_validation_suite(suite, tol_override);
  if (json) {
    nlohmann::json j;
    j["suite"] = suite;
    j["pass"] = all_passed(results);
    j["checks"] = nlohmann::json::array();
    for (const auto& r : results) {
      j["checks"].push_back({{"suite", r.suite},
                             {"name", r.name},
                             {"observed", r.observed},
                             {"threshold", r.threshold},
                             {"pass", r.pass}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%-16s  %-55s  %-12s  %-12s  %s\n", "suite", "check", "observed",
                "threshold", "status");
    for (const auto& r : results) {
      std::printf("%-16s  %-55s  %-12.3e  %-12.3e  %s\n", r.suite.c_str(),
                  r.name.c_str(), r.observed, r.threshold, r.pass ? "pass" : "FAIL");
    }
    std::printf("%s\n", all_passed(results) ? "all checks passed"
                                            : "VALIDATION FAILED");
  }
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional-derivative rheological models: time- and "
               "frequency-response functions, convolution responses, "
               "validation suites"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "sample a time-response kernel as CSV");
  std::string eval_config, eval_function = "relaxation", eval_spacing = "linear";
  double eval_tmin = 1e-2, eval_tmax = 10.0;
  int eval_points = 256;
  bool eval_normalized = false;
  eval->add_option("config", eval_config, "model config file")->required();
  eval->add_option("--function", eval_function,
                   "memory|relaxation|fluidity|creep|strain-rate");
  eval->add_option("--tmin", eval_tmin);
  eval->add_option("--tmax", eval_tmax);
  eval->add_option("--points", eval_points);
  eval->add_option("--spacing", eval_spacing, "linear|log");
  eval->add_flag("--normalized", eval_normalized,
                 "emit the dimensionless curve family");

  auto* freq = app.add_subcommand("freq", "sample a frequency-response function");
  std::string freq_config, freq_function = "modulus";
  double freq_wmin = 1e-2, freq_wmax = 1e2;
  int freq_points = 256;
  freq->add_option("config", freq_config, "model config file")->required();
  freq->add_option("--function", freq_function,
                   "modulus|viscosity|compliance|fluidity|creep");
  freq->add_option("--wmin", freq_wmin);
  freq->add_option("--wmax", freq_wmax);
  freq->add_option("--points", freq_points);

  auto* conv = app.add_subcommand("convolve", "response to a sampled history");
  std::string conv_config, conv_input, conv_direction = "stress-from-strain";
  double conv_step = 0.0;
  conv->add_option("config", conv_config, "model config file")->required();
  conv->add_option("--input", conv_input, "input CSV (t,value)")->required();
  conv->add_option("--direction", conv_direction,
                   "stress-from-strain|strain-from-stress|strainrate-from-stress");
  conv->add_option("--step-amplitude", conv_step,
                   "declared input jump at t = 0");

  auto* val = app.add_subcommand("validate", "run the built-in validation suites");
  std::string val_suite = "all";
  bool val_json = false;
  val->add_option("--suite", val_suite, "ml|gl|interconversion|limits|laplace|all");
  val->add_flag("--json", val_json, "machine-readable summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed())
      return cmd_eval(eval_config, eval_function, eval_tmin, eval_tmax, eval_points,
                      eval_spacing, eval_normalized);
    if (freq->parsed())
      return cmd_freq(freq_config, freq_function, freq_wmin, freq_wmax, freq_points);
    if (conv->parsed())
      return cmd_convolve(conv_config, conv_input, conv_direction, conv_step);
    if (val->parsed()) return cmd_validate(val_suite, val_json);
  } catch (const fracrheo::parse_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const fracrheo::unsupported_model_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const fracrheo::grid_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const fracrheo::signal_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
