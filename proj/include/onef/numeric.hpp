#pragma once

#include <cmath>

// Stable scalar kernels shared by the spectrum evaluators and the fitter.
// Everything here is a pure function of its arguments.

namespace onef {

// (1 - e^{-x}) / x for x >= 0, with the continuous extension 1 at x = 0.
// A truncated series is used below 1e-5; above, expm1 keeps full relative
// accuracy where the naive 1 - exp(-x) would cancel.
inline double one_minus_exp_over_x(double x) {
  if (x < 1e-5) {
    // next term is x^3/24 < 4e-17 relative at the threshold
    return 1.0 - 0.5 * x + x * x / 6.0;
  }
  return -std::expm1(-x) / x;
}

// x / (e^x - 1) for x >= 0, extension 1 at x = 0. Decays to 0 for large x.
inline double x_over_expm1(double x) {
  if (x == 0.0) return 1.0;
  return x / std::expm1(x);
}

}  // namespace onef
