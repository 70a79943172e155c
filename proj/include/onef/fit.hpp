#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "onef/band.hpp"
#include "onef/model.hpp"
#include "onef/numeric.hpp"
#include "onef/samples.hpp"

// Parameter recovery for the finite-duration spectrum. The spectrum only
// determines the combination A = i0/alpha0, B = alpha0*T (plus y), so the
// fit works in that canonical parameterization:
//
//   P(f) = A * (1 - e^{-B f^y}) / f^y = A * B * E(B f^y)
//
// and minimizes squared log-residuals with a damped Gauss-Newton iteration
// over (log A, log B, y), y clamped to [0, 2]. Log coordinates keep A and B
// positive without a constrained solver, and match the multiplicative noise
// model of synthesize_grid.

namespace onef {

// Identifiable spectrum parameters: amplitude scale A = i0/alpha0, decay
// scale B = alpha0*T, exponent y. The low-frequency plateau is A*B = i0*T.
class CanonicalParams {
 public:
  CanonicalParams(double a, double b, double y) : a_(a), b_(b), y_(y) {
    if (!(std::isfinite(a) && a > 0.0))
      throw std::invalid_argument("CanonicalParams: A must be finite and > 0");
    if (!(std::isfinite(b) && b > 0.0))
      throw std::invalid_argument("CanonicalParams: B must be finite and > 0");
    if (!(y >= 0.0 && y <= 2.0))
      throw std::invalid_argument("CanonicalParams: y must lie in [0, 2]");
  }

  static CanonicalParams from_model(const FiniteSignalModel& m) {
    return CanonicalParams(m.params().i0() / m.params().alpha0(),
                           m.params().alpha0() * m.duration(), m.params().y());
  }

  double a() const { return a_; }
  double b() const { return b_; }
  double y() const { return y_; }
  double plateau() const { return a_ * b_; }

  double psd(double f) const {
    if (!(f >= 0.0)) throw std::domain_error("CanonicalParams::psd: f must be >= 0");
    const double fy = (y_ == 0.0) ? 1.0 : std::pow(f, y_);
    return a_ * b_ * one_minus_exp_over_x(b_ * fy);
  }

 private:
  double a_;
  double b_;
  double y_;
};

struct FitResult {
  CanonicalParams params;
  double residual;  // root-mean-square log-residual
  int iterations;
  bool converged;
};

namespace detail {

struct LineFit {
  double slope;
  double intercept;
};

// Ordinary least squares of y against x.
inline LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

// log of E(x) = (1 - e^{-x})/x; the absolute error stays at machine level
// because E carries full relative accuracy.
inline double log_e_kernel(double x) { return std::log(one_minus_exp_over_x(x)); }

// Solve the damped 3x3 normal equations (H + lambda*D) delta = -g by
// Gaussian elimination with partial pivoting. Returns false on a vanishing
// pivot (caller then raises the damping).
inline bool solve_damped_3x3(const std::array<std::array<double, 3>, 3>& h,
                             const std::array<double, 3>& g, double lambda,
                             std::array<double, 3>& delta) {
  double m[3][4];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m[r][c] = h[r][c];
    m[r][r] += lambda * std::max(h[r][r], 1e-12);
    m[r][3] = -g[r];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (std::fabs(m[piv][col]) < 1e-300) return false;
    if (piv != col)
      for (int c = col; c < 4; ++c) std::swap(m[piv][c], m[col][c]);
    for (int r = col + 1; r < 3; ++r) {
      const double factor = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double acc = m[r][3];
    for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * delta[c];
    delta[r] = acc / m[r][r];
  }
  return true;
}

// Initial guess from the model's own asymptotics: the lowest-decade mean
// estimates the plateau A*B, the highest-decade log-log slope and intercept
// give y and A, and B follows.
inline std::array<double, 3> initial_guess(const SpectrumSamples& samples) {
  const auto& pts = samples.points();
  const double f_min = pts.front().frequency;
  const double f_max = pts.back().frequency;

  double plateau = 0.0;
  int n_plateau = 0;
  for (const auto& s : pts) {
    if (s.frequency <= 10.0 * f_min) {
      plateau += s.power;
      ++n_plateau;
    }
  }
  plateau /= n_plateau;

  std::vector<double> lf, lp;
  for (const auto& s : pts) {
    if (s.frequency >= f_max / 10.0) {
      lf.push_back(std::log(s.frequency));
      lp.push_back(std::log(s.power));
    }
  }
  if (lf.size() < 2) {
    lf = {std::log(pts[pts.size() - 2].frequency), std::log(pts.back().frequency)};
    lp = {std::log(pts[pts.size() - 2].power), std::log(pts.back().power)};
  }
  const LineFit tail = ols(lf, lp);

  const double y0 = std::clamp(-tail.slope, 0.0, 2.0);
  const double log_a0 = tail.intercept;
  double log_b0 = std::log(plateau) - log_a0;
  if (!std::isfinite(log_b0)) log_b0 = 0.0;
  return {log_a0, log_b0, y0};
}

}  // namespace detail

// Fit (A, B, y) to spectrum samples by minimizing the sum of squared
// log-residuals. Deterministic given samples and init; without init, the
// asymptotic heuristic above seeds the iteration. Iteration budget 200,
// projected-gradient tolerance 1e-10. Non-convergence is reported through
// the converged flag, not an exception.
inline FitResult fit_spectrum(const SpectrumSamples& samples,
                              std::optional<CanonicalParams> init = std::nullopt) {
  const auto& pts = samples.points();
  if (pts.size() < 3)
    throw std::invalid_argument("fit_spectrum: need at least 3 samples");

  const std::size_t n = pts.size();
  std::vector<double> log_f(n), log_p(n);
  for (std::size_t i = 0; i < n; ++i) {
    log_f[i] = std::log(pts[i].frequency);
    log_p[i] = std::log(pts[i].power);
  }

  // theta = (log A, log B, y)
  std::array<double, 3> theta;
  if (init) {
    theta = {std::log(init->a()), std::log(init->b()), init->y()};
  } else {
    theta = detail::initial_guess(samples);
  }

  const auto residuals = [&](const std::array<double, 3>& th, std::vector<double>& r) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::exp(th[1] + th[2] * log_f[i]);
      r[i] = log_p[i] - (th[0] + th[1] + detail::log_e_kernel(x));
      ssr += r[i] * r[i];
    }
    return ssr;
  };

  constexpr int kMaxIterations = 200;
  constexpr double kGradTol = 1e-10;

  std::vector<double> r(n), r_trial(n);
  double ssr = residuals(theta, r);
  double lambda = 1e-3;
  int iterations = 0;
  bool converged = false;

  while (iterations < kMaxIterations) {
    ++iterations;

    // gradient g = J^T r and normal matrix H = J^T J of the current point
    std::array<double, 3> g{};
    std::array<std::array<double, 3>, 3> h{};
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::exp(theta[1] + theta[2] * log_f[i]);
      const double hx = x_over_expm1(x);
      const std::array<double, 3> row = {-1.0, -hx, (1.0 - hx) * log_f[i]};
      for (int a = 0; a < 3; ++a) {
        g[a] += row[a] * r[i];
        for (int b = 0; b < 3; ++b) h[a][b] += row[a] * row[b];
      }
    }

    // projected gradient: directions pushing y outside [0, 2] are inactive
    std::array<double, 3> pg = g;
    if ((theta[2] <= 0.0 && g[2] > 0.0) || (theta[2] >= 2.0 && g[2] < 0.0)) pg[2] = 0.0;
    if (std::max({std::fabs(pg[0]), std::fabs(pg[1]), std::fabs(pg[2])}) <= kGradTol) {
      converged = true;
      break;
    }

    std::array<double, 3> delta;
    if (!detail::solve_damped_3x3(h, g, lambda, delta)) {
      lambda *= 10.0;
      continue;
    }
    std::array<double, 3> trial = {theta[0] + delta[0], theta[1] + delta[1],
                                   std::clamp(theta[2] + delta[2], 0.0, 2.0)};
    const double ssr_trial = residuals(trial, r_trial);

    // ulp-level increases are ties: near the minimum the true improvement of
    // a Gauss-Newton step sits below the roundoff of the SSR sum itself
    if (std::isfinite(ssr_trial) && ssr_trial <= ssr * (1.0 + 1e-14)) {
      theta = trial;
      ssr = ssr_trial;
      r.swap(r_trial);
      lambda = std::max(lambda / 3.0, 1e-14);
    } else {
      lambda *= 10.0;
      if (lambda > 1e14) break;  // damping exhausted, report non-convergence
    }
  }

  return FitResult{CanonicalParams(std::exp(theta[0]), std::exp(theta[1]), theta[2]),
                   std::sqrt(ssr / static_cast<double>(n)), iterations, converged};
}

// Least-squares slope of log power against log frequency over the samples
// inside the band; -y for pure infinite-duration power-law samples, ~0 on
// the finite-duration plateau.
inline double loglog_slope(const SpectrumSamples& samples, const Band& band) {
  std::vector<double> lf, lp;
  for (const auto& s : samples) {
    if (s.frequency >= band.f_lo() && s.frequency <= band.f_hi()) {
      lf.push_back(std::log(s.frequency));
      lp.push_back(std::log(s.power));
    }
  }
  if (lf.size() < 2)
    throw std::invalid_argument("loglog_slope: need at least 2 samples inside the band");
  return detail::ols(lf, lp).slope;
}

}  // namespace onef
