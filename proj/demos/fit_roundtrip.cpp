// Synthesize a noisy decaying-envelope grid, estimate its spectrum by time
// quadrature, fit the canonical parameters and compare with the truth.

#include <cstdio>

#include "onef/fit.hpp"
#include "onef/grid.hpp"
#include "onef/model.hpp"
#include "onef/synth.hpp"

int main() {
  const onef::FiniteSignalModel model(onef::DissipationParams(1.0, 0.4, 1.2), 5.0);
  const onef::CanonicalParams truth = onef::CanonicalParams::from_model(model);

  const auto freqs = onef::logspace(1e-3, 1e1, 50);
  const auto times = onef::linspace(0.0, model.duration(), (1 << 14) + 1);
  const onef::EnvelopeGrid grid = onef::synthesize_grid(model, freqs, times, 0.01, 42);
  const onef::SpectrumSamples samples = onef::estimate_psd(grid);
  const onef::FitResult fit = onef::fit_spectrum(samples);

  std::printf("truth:  A = %.6f  B = %.6f  y = %.6f\n", truth.a(), truth.b(), truth.y());
  std::printf("fitted: A = %.6f  B = %.6f  y = %.6f\n", fit.params.a(), fit.params.b(),
              fit.params.y());
  std::printf("rms log-residual = %.3e, %d iterations, converged = %s\n", fit.residual,
              fit.iterations, fit.converged ? "yes" : "no");
  return fit.converged ? 0 : 1;
}
