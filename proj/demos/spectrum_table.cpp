// Minimal library walkthrough: evaluate the finite- and infinite-duration
// spectra and the augmented function over a log grid and print a table.

#include <cstdio>

#include "onef/grid.hpp"
#include "onef/model.hpp"

int main() {
  const onef::DissipationParams params(1.0, 1.0, 1.0);
  const onef::FiniteSignalModel model(params, 10.0);

  std::printf("plateau i0*T = %.6g\n", onef::low_freq_limit(model));
  std::printf("%12s %14s %14s %14s\n", "f", "psd_finite", "psd_infinite", "R");
  for (double f : onef::logspace(1e-4, 1e2, 13)) {
    const onef::SpectrumValue inf_value = onef::psd_infinite(params, f);
    std::printf("%12.4e %14.6e %14.6e %14.6e\n", f, onef::psd_finite(model, f),
                inf_value.power, onef::augmented_r(model, f));
  }
  return 0;
}
