#pragma once

#include <cstddef>
#include <vector>

namespace fracrheo {

enum class SignalRole { strain, strain_rate, stress, stress_rate, kernel };

inline const char* to_string(SignalRole r) {
  switch (r) {
    case SignalRole::strain: return "strain";
    case SignalRole::strain_rate: return "strain_rate";
    case SignalRole::stress: return "stress";
    case SignalRole::stress_rate: return "stress_rate";
    case SignalRole::kernel: return "kernel";
  }
  return "?";
}

// Uniformly gridded causal time series starting at t = 0.  `initial_step`
// declares a jump of that amplitude at t = 0 (the sampled values are the
// smooth part on top of it); convolutions need jumps declared explicitly
// rather than differentiating them out of the samples.
struct SampledSignal {
  double dt = 0.0;
  std::vector<double> values;
  SignalRole role = SignalRole::strain;
  double initial_step = 0.0;

  std::size_t size() const { return values.size(); }
  double time_at(std::size_t i) const { return dt * static_cast<double>(i); }
};

}  // namespace fracrheo
