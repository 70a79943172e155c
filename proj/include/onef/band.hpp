#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "onef/model.hpp"
#include "onef/quadrature.hpp"

// Band-integrated spectrum power. The infinite-duration spectrum has a
// closed-form antiderivative, so its band power is evaluated exactly and the
// low-frequency divergence (f_lo = 0 with y >= 1) is decided analytically,
// never by numeric probing. The finite-duration spectrum is bounded by the
// plateau i0*T, so its band power always exists and is computed by adaptive
// quadrature.

namespace onef {

// Frequency band [f_lo, f_hi] with 0 <= f_lo < f_hi < infinity.
class Band {
 public:
  Band(double f_lo, double f_hi) : f_lo_(f_lo), f_hi_(f_hi) {
    if (!(f_lo >= 0.0 && f_lo < f_hi && std::isfinite(f_hi)))
      throw std::invalid_argument("Band: need 0 <= f_lo < f_hi < infinity");
  }

  double f_lo() const { return f_lo_; }
  double f_hi() const { return f_hi_; }
  double width() const { return f_hi_ - f_lo_; }

 private:
  double f_lo_;
  double f_hi_;
};

// Band power: either a finite value with an error estimate, or the explicit
// divergent marker (the infrared catastrophe case).
class BandPower {
 public:
  static BandPower finite(double value, double error_estimate) {
    return BandPower(false, value, error_estimate);
  }
  static BandPower divergent() {
    return BandPower(true, 0.0, 0.0);
  }

  bool is_divergent() const { return divergent_; }
  bool is_finite() const { return !divergent_; }

  double value() const {
    if (divergent_) throw std::logic_error("BandPower: no value, band power is divergent");
    return value_;
  }
  double error_estimate() const {
    if (divergent_) throw std::logic_error("BandPower: no error estimate, band power is divergent");
    return error_;
  }

 private:
  BandPower(bool divergent, double value, double error)
      : divergent_(divergent), value_(value), error_(error) {}

  bool divergent_;
  double value_;
  double error_;
};

enum class Classification { convergent, divergent };

// Low-band behaviour of the infinite-duration spectrum: integral of
// i0/(alpha0 f^y) down to f = 0 diverges exactly when y >= 1.
inline Classification classify_infrared(const DissipationParams& p) {
  return p.y() >= 1.0 ? Classification::divergent : Classification::convergent;
}

// Finite duration caps the spectrum at the plateau i0*T, so every band
// power converges regardless of y.
inline Classification classify_infrared(const FiniteSignalModel&) {
  return Classification::convergent;
}

// The quadrature surface used by the band integrals: adaptive G7/K15 over a
// band, relative tolerance in (0, 1).
template <class F>
QuadratureResult quadrature(F&& f, const Band& band, double rel_tol = 1e-9,
                            int max_panels = 1'000'000) {
  return adaptive_integrate(std::forward<F>(f), band.f_lo(), band.f_hi(), rel_tol, max_panels);
}

// Exact band power of the infinite-duration spectrum. With A = i0/alpha0:
//
//   y != 1:  A * (f_hi^{1-y} - f_lo^{1-y}) / (1 - y)
//   y  = 1:  A * ln(f_hi / f_lo)
//
// Divergent exactly when f_lo = 0 and y >= 1. The log branch takes over for
// |y - 1| < 1e-12; elsewhere the difference of powers is evaluated through
// expm1 so the removable singularity at y = 1 stays well conditioned.
inline BandPower band_power_infinite(const DissipationParams& p, const Band& band) {
  const double amp = p.i0() / p.alpha0();
  const double y = p.y();
  const double ey = 1.0 - y;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  if (band.f_lo() == 0.0) {
    if (y >= 1.0) return BandPower::divergent();
    const double value = amp * std::pow(band.f_hi(), ey) / ey;
    return BandPower::finite(value, 32.0 * eps * value);
  }

  double value;
  if (std::fabs(ey) < 1e-12) {
    value = amp * std::log(band.f_hi() / band.f_lo());
  } else {
    const double lo_pow = std::pow(band.f_lo(), ey);
    const double log_ratio = std::log(band.f_hi() / band.f_lo());
    value = amp * lo_pow * std::expm1(ey * log_ratio) / ey;
  }
  return BandPower::finite(value, 32.0 * eps * std::fabs(value));
}

// Band power of the finite-duration spectrum by adaptive quadrature of
// psd_finite. The integrand is bounded by the plateau, so this is always
// finite; the result carries the quadrature error estimate (<= tol * value).
// Throws ConvergenceError (best estimate attached) if the panel budget runs
// out.
inline BandPower band_power_finite(const FiniteSignalModel& m, const Band& band,
                                   double rel_tol = 1e-9, int max_panels = 1'000'000) {
  const QuadratureResult r = quadrature(
      [&m](double f) { return psd_finite(m, f); }, band, rel_tol, max_panels);
  return BandPower::finite(r.value, r.error_estimate);
}

}  // namespace onef
