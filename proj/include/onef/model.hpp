#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "onef/numeric.hpp"

// Closed-form evaluators for the dissipative spectrum model
//
//   I(f, t)  = i0 * exp(-alpha(f) * t)          decaying instantaneous power
//   alpha(f) = alpha0 * f^y,  y in [0, 2]       power-law attenuation
//   P(f)     = i0 / (alpha0 * f^y)              spectrum, infinite duration
//   P_T(f)   = i0 * (1 - e^{-alpha(f) T}) / (alpha0 * f^y)   duration T
//   R(f)     = P_T(f) * f^y                     augmented spectrum function
//
// P_T is evaluated as i0 * T * E(x) with x = alpha(f) * T and
// E(x) = (1 - e^{-x}) / x, which is finite and stable all the way into the
// low-frequency plateau P_T(0) = i0 * T.

namespace onef {

// Medium parameters. Validated on construction: i0 > 0, alpha0 > 0 and
// y in [0, 2]; anything else is rejected rather than extrapolated.
class DissipationParams {
 public:
  DissipationParams(double i0, double alpha0, double y)
      : i0_(i0), alpha0_(alpha0), y_(y) {
    if (!(std::isfinite(i0) && i0 > 0.0))
      throw std::invalid_argument("DissipationParams: i0 must be finite and > 0");
    if (!(std::isfinite(alpha0) && alpha0 > 0.0))
      throw std::invalid_argument("DissipationParams: alpha0 must be finite and > 0");
    if (!(y >= 0.0 && y <= 2.0))
      throw std::invalid_argument("DissipationParams: y must lie in [0, 2]");
  }

  double i0() const { return i0_; }
  double alpha0() const { return alpha0_; }
  double y() const { return y_; }

 private:
  double i0_;
  double alpha0_;
  double y_;
};

// Dissipation parameters plus a finite signal duration T > 0.
class FiniteSignalModel {
 public:
  FiniteSignalModel(DissipationParams params, double duration)
      : params_(params), duration_(duration) {
    if (!(std::isfinite(duration) && duration > 0.0))
      throw std::invalid_argument("FiniteSignalModel: duration must be finite and > 0");
  }

  const DissipationParams& params() const { return params_; }
  double duration() const { return duration_; }

 private:
  DissipationParams params_;
  double duration_;
};

// One spectrum sample. power is +infinity exactly where the model diverges
// (the f -> 0 limit of the infinite-duration spectrum with y > 0); the
// divergence is a value here, not an error.
struct SpectrumValue {
  double frequency;
  double power;

  bool is_infinite() const { return std::isinf(power); }
};

// alpha(f) = alpha0 * f^y. The y = 0 model is flat everywhere, so f = 0
// with y = 0 evaluates f^y as 1 (continuity in y -> 0+ at fixed f > 0).
inline double attenuation(const DissipationParams& p, double f) {
  if (!(f >= 0.0)) throw std::domain_error("attenuation: f must be >= 0");
  if (p.y() == 0.0) return p.alpha0();
  return p.alpha0() * std::pow(f, p.y());
}

// I(f, t) = i0 * exp(-alpha(f) * t)
inline double instantaneous_power(const DissipationParams& p, double f, double t) {
  if (!(t >= 0.0)) throw std::domain_error("instantaneous_power: t must be >= 0");
  return p.i0() * std::exp(-attenuation(p, f) * t);
}

// Infinite-duration spectrum i0 / (alpha0 * f^y). Divergent (infinite) at
// f = 0 whenever y > 0.
inline SpectrumValue psd_infinite(const DissipationParams& p, double f) {
  const double a = attenuation(p, f);
  if (a == 0.0) return {f, std::numeric_limits<double>::infinity()};
  return {f, p.i0() / a};
}

// Finite-duration spectrum i0 * T * E(alpha(f) * T). Always finite, in
// (0, i0*T], and equal to the plateau value i0*T at f = 0 (and wherever
// alpha(f)*T underflows).
inline double psd_finite(const FiniteSignalModel& m, double f) {
  const double x = attenuation(m.params(), f) * m.duration();
  return m.params().i0() * m.duration() * one_minus_exp_over_x(x);
}

// Augmented spectrum function R(f) = i0 * (1 - e^{-alpha(f) T}) / alpha0,
// the slowly varying factor with P_T(f) = R(f) / f^y. Increases from 0 at
// f = 0 (y > 0) towards the supremum i0 / alpha0.
inline double augmented_r(const FiniteSignalModel& m, double f) {
  const double x = attenuation(m.params(), f) * m.duration();
  return m.params().i0() * -std::expm1(-x) / m.params().alpha0();
}

// Low-frequency limit of the finite-duration spectrum: i0 * T, independent
// of y. This plateau is what keeps every band power finite.
inline double low_freq_limit(const FiniteSignalModel& m) {
  return m.params().i0() * m.duration();
}

}  // namespace onef
