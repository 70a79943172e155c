#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

// Exponent bounds for intermittent turbulence: spectra with exponent
// beta = 5/3 + c sit inside the admissible window 0 <= beta <= 2, so the
// intermittency correction obeys c <= 1/3. The fractal dimension D of the
// turbulence support relates to the correction by c = (3 - D)/3 with D > 2,
// which lands inside the window automatically.

namespace onef {

inline constexpr double kKolmogorovExponent = 5.0 / 3.0;
inline constexpr double kMaxCorrection = 1.0 / 3.0;

struct TurbulenceExponent {
  double beta;                      // spectral exponent 5/3 + c
  double c;                         // intermittency correction
  std::optional<double> dimension;  // fractal dimension, when known
  bool admissible;                  // beta <= 2, equivalently c <= 1/3
};

// beta = 5/3 + c for a correction c >= 0. Admissible up to and including
// c = 1/3 (beta = 2).
inline TurbulenceExponent beta_from_correction(double c) {
  if (!(std::isfinite(c) && c >= 0.0))
    throw std::domain_error("beta_from_correction: c must be finite and >= 0");
  return {kKolmogorovExponent + c, c, std::nullopt, c <= kMaxCorrection};
}

// c = (3 - d)/3 for a fractal dimension d in (2, 3]; the result lies in
// [0, 1/3) and is always admissible.
inline double correction_from_dimension(double d) {
  if (!(d > 2.0 && d <= 3.0))
    throw std::domain_error("correction_from_dimension: d must lie in (2, 3]");
  return (3.0 - d) / 3.0;
}

// Inverse of correction_from_dimension: d = 3 - 3c for c in [0, 1/3).
inline double dimension_from_correction(double c) {
  if (!(c >= 0.0 && c < kMaxCorrection))
    throw std::domain_error("dimension_from_correction: c must lie in [0, 1/3)");
  return 3.0 - 3.0 * c;
}

// Full exponent record for a dimension d in (2, 3].
inline TurbulenceExponent exponent_from_dimension(double d) {
  TurbulenceExponent e = beta_from_correction(correction_from_dimension(d));
  e.dimension = d;
  return e;
}

}  // namespace onef
