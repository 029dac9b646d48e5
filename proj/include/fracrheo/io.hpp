#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fracrheo/errors.hpp"
#include "fracrheo/models.hpp"
#include "fracrheo/signal.hpp"

// Plain-text surfaces: CSV signals ("t,value" with '#' header comments) and
// the key/value model-config format.  Newline \n, UTF-8, '.' decimal
// separator; numbers emitted with 17 significant digits so a round trip is
// bit-exact.

namespace fracrheo {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_signal_csv(
    std::ostream& out, const SampledSignal& s,
    const std::vector<std::pair<std::string, std::string>>& comments) {
  for (const auto& [k, v] : comments) out << "# " << k << " = " << v << "\n";
  out << "t,value\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    out << format_double(s.time_at(i)) << "," << format_double(s.values[i]) << "\n";
}

inline void write_curve_csv(
    std::ostream& out, const std::vector<double>& t, const std::vector<double>& v,
    const std::vector<std::pair<std::string, std::string>>& comments) {
  for (const auto& [k, val] : comments) out << "# " << k << " = " << val << "\n";
  out << "t,value\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out << format_double(t[i]) << "," << format_double(v[i]) << "\n";
}

namespace detail {
inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline bool parse_number(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  *out = std::strtod(s.c_str(), &end);  // accepts inf/nan sentinels
  return end == s.c_str() + s.size();
}
}  // namespace detail

// Reads a "t,value" CSV.  Grid must start at 0 and be uniform (grid_error
// otherwise); values must be finite (signal_error).  An empty file is an
// empty signal.
inline SampledSignal read_signal_csv(std::istream& in,
                                     SignalRole role = SignalRole::strain) {
  SampledSignal s;
  s.role = role;
  std::vector<double> times;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos)
      throw parse_error("csv:" + std::to_string(lineno) + ": expected t,value");
    double tv = 0.0, vv = 0.0;
    if (!detail::parse_number(detail::trim(t.substr(0, comma)), &tv)) {
      // tolerate a single header line like "t,value"
      if (times.empty()) continue;
      throw parse_error("csv:" + std::to_string(lineno) + ": bad time field");
    }
    if (!detail::parse_number(detail::trim(t.substr(comma + 1)), &vv))
      throw parse_error("csv:" + std::to_string(lineno) + ": bad value field");
    if (!std::isfinite(vv))
      throw signal_error("csv:" + std::to_string(lineno) +
                         ": non-finite or sentinel value");
    times.push_back(tv);
    s.values.push_back(vv);
  }
  if (times.empty()) return s;
  if (std::abs(times.front()) > 1e-12)
    throw grid_error("csv: time grid must start at t = 0");
  if (times.size() >= 2) {
    s.dt = times[1] - times[0];
    if (!(s.dt > 0.0)) throw grid_error("csv: non-increasing time grid");
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double expect = s.dt * static_cast<double>(i);
      if (std::abs(times[i] - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
        throw grid_error("csv: non-uniform time grid at row " + std::to_string(i + 1));
    }
  } else {
    s.dt = 1.0;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Model config: `key = value` lines, '#' comments.
//   model = scott_blair | frac_maxwell | frac_kelvin_voigt | hookean |
//           newtonian | kelvin_voigt | maxwell | general
//   scalars: G, eta, K, q, Kp, p, Kq as applicable
//   general: repeated rows `a = <coefficient> <order>` and `b = ...`
// ---------------------------------------------------------------------------
inline RheoModel parse_model_config(std::istream& in, const std::string& filename) {
  std::string model_name;
  std::map<std::string, double> scalars;
  std::vector<SeriesTerm> a_terms, b_terms;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw parse_error(filename + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    const auto hash = t.find('#');
    if (hash != std::string::npos) t = detail::trim(t.substr(0, hash));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail("expected `key = value`");
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string val = detail::trim(t.substr(eq + 1));
    if (key == "model") {
      if (!model_name.empty()) fail("duplicate `model` line");
      model_name = val;
    } else if (key == "a" || key == "b") {
      std::string v = val;
      for (auto& c : v)
        if (c == ',') c = ' ';
      std::istringstream pair(v);
      double coeff = 0.0, order = 0.0;
      if (!(pair >> coeff >> order)) fail("expected `" + key + " = coefficient order`");
      (key == "a" ? a_terms : b_terms).push_back({coeff, order});
    } else if (key == "G" || key == "eta" || key == "K" || key == "q" ||
               key == "Kp" || key == "p" || key == "Kq") {
      double v = 0.0;
      if (!detail::parse_number(val, &v)) fail("bad number for `" + key + "`");
      if (scalars.count(key)) fail("duplicate key `" + key + "`");
      scalars[key] = v;
    } else {
      fail("unknown key `" + key + "`");
    }
  }
  lineno = 0;  // anchors below refer to the file as a whole
  auto need = [&](const char* k) -> double {
    const auto it = scalars.find(k);
    if (it == scalars.end())
      throw parse_error(filename + ": missing key `" + std::string(k) + "` for model " +
                        model_name);
    return it->second;
  };
  auto only = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : scalars) {
      bool ok = false;
      for (const char* allowed : keys)
        if (k == allowed) ok = true;
      if (!ok)
        throw parse_error(filename + ": key `" + k + "` does not apply to model " +
                          model_name);
    }
  };
  RheoModel model;
  if (model_name.empty()) throw parse_error(filename + ": missing `model =` line");
  if (model_name == "hookean") {
    only({"G"});
    model = Hookean{need("G")};
  } else if (model_name == "newtonian") {
    only({"eta"});
    model = Newtonian{need("eta")};
  } else if (model_name == "kelvin_voigt") {
    only({"G", "eta"});
    model = KelvinVoigt{need("G"), need("eta")};
  } else if (model_name == "maxwell") {
    only({"G", "eta"});
    model = Maxwell{need("G"), need("eta")};
  } else if (model_name == "scott_blair") {
    only({"K", "q"});
    model = ScottBlair{need("K"), need("q")};
  } else if (model_name == "frac_maxwell") {
    only({"Kp", "p", "Kq", "q"});
    model = FracMaxwell{need("Kp"), need("p"), need("Kq"), need("q")};
  } else if (model_name == "frac_kelvin_voigt") {
    only({"Kp", "p", "Kq", "q"});
    model = FracKelvinVoigt{need("Kp"), need("p"), need("Kq"), need("q")};
  } else if (model_name == "general") {
    only({});
    model = GeneralFractional{a_terms, b_terms};
  } else {
    throw parse_error(filename + ": unknown model `" + model_name + "`");
  }
  if (model_name != "general" && (!a_terms.empty() || !b_terms.empty()))
    throw parse_error(filename + ": a/b rows apply to the general model only");
  try {
    validate_model(model);
  } catch (const std::invalid_argument& e) {
    throw parse_error(filename + ": invalid parameters: " + e.what());
  }
  return model;
}

inline std::string model_name(const RheoModel& m) {
  struct V {
    std::string operator()(const Hookean&) const { return "hookean"; }
    std::string operator()(const Newtonian&) const { return "newtonian"; }
    std::string operator()(const KelvinVoigt&) const { return "kelvin_voigt"; }
    std::string operator()(const Maxwell&) const { return "maxwell"; }
    std::string operator()(const ScottBlair&) const { return "scott_blair"; }
    std::string operator()(const FracMaxwell&) const { return "frac_maxwell"; }
    std::string operator()(const FracKelvinVoigt&) const { return "frac_kelvin_voigt"; }
    std::string operator()(const GeneralFractional&) const { return "general"; }
  };
  return std::visit(V{}, m);
}

}  // namespace fracrheo
