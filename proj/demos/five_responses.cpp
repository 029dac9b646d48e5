// Library usage in one sitting: build a model, look at its frequency
// response, sample its five time-response kernels, and push a stress history
// through it.  Build target: fracrheo_demo.

#include <cstdio>

#include "fracrheo/convolution.hpp"
#include "fracrheo/models.hpp"

using namespace fracrheo;

int main() {
  // Two Scott-Blair elements in series: a springpot (order 0.3) feeding a
  // nearly Newtonian element (order 0.8).
  const RheoModel model = FracMaxwell{2.0, 0.3, 1.0, 0.8};

  std::printf("dynamic modulus on a log sweep:\n");
  for (double w : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const auto G = dynamic_modulus(model, w);
    std::printf("  w = %6.2f   G' = %10.4f   G'' = %10.4f\n", w, G.value.real(),
                G.value.imag());
  }

  std::printf("\ntime-response kernels at t = 1:\n");
  for (auto kind : {ResponseKind::memory, ResponseKind::relaxation_modulus,
                    ResponseKind::impulse_fluidity, ResponseKind::creep_compliance,
                    ResponseKind::impulse_strain_rate}) {
    const auto kernel = response_kernel(model, kind);
    std::printf("  %-20s value %12.6f", to_string(kind), kernel.value_at(1.0));
    for (const auto& d : kernel.symbolic_deltas())
      std::printf("   + %g * delta^(%g)(t)", d.coefficient, d.order);
    std::printf("\n");
  }

  // Creep test: a declared unit step of stress, zero sampled part.
  SampledSignal stress;
  stress.dt = 1e-2;
  stress.role = SignalRole::stress;
  stress.values.assign(501, 0.0);
  stress.initial_step = 1.0;
  const auto creep = strain_from_stress(model, stress);
  const auto J = creep_compliance(model);
  std::printf("\nstep-stress response vs the creep compliance kernel:\n");
  for (double t : {1.0, 2.5, 5.0}) {
    const auto j = static_cast<std::size_t>(t / stress.dt);
    std::printf("  t = %4.1f   convolved %10.6f   J(t) %10.6f\n", t,
                creep.signal.values[j], J.value_at(t));
  }
  return 0;
}
