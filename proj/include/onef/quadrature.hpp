#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// Globally adaptive quadrature on a finite interval, built on the embedded
// Gauss 7 / Kronrod 15 pair. The panel with the largest error estimate is
// bisected until the summed estimates drop below tol * |value| or the panel
// budget runs out. The final value is re-summed over panels ordered by left
// endpoint, so a given (integrand, interval, tol) always reproduces the same
// bits.

namespace onef {

struct QuadratureResult {
  double value;
  double error_estimate;
  int panels;
};

// Thrown when the subdivision budget is exhausted before the tolerance is
// met. Carries the best estimate accumulated so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_(best_estimate), err_(error_estimate) {}

  double best_estimate() const { return best_; }
  double error_estimate() const { return err_; }

 private:
  double best_;
  double err_;
};

namespace detail {

// Nonnegative half of the symmetric Kronrod-15 abscissae, their weights,
// and the embedded 7-point Gauss weights (zero where the node is
// Kronrod-only).
inline constexpr int kGk15Nodes = 8;
inline constexpr double kGk15X[kGk15Nodes] = {
    0.0,
    0.2077849550078984676006894037732449,
    0.4058451513773971669066064120769615,
    0.5860872354676911302941448382587296,
    0.7415311855993944398638647732807884,
    0.8648644233597690727897127886409262,
    0.9491079123427585245261896840478513,
    0.9914553711208126392068546975263285,
};
inline constexpr double kGk15Wk[kGk15Nodes] = {
    0.2094821410847278280129991748917143,
    0.2044329400752988924141619992346491,
    0.1903505780647854099132564024210137,
    0.1690047266392679028265834265985503,
    0.1406532597155259187451895905102379,
    0.1047900103222501838398763225415180,
    0.0630920926299785532907006631892042,
    0.0229353220105292249637320080589695,
};
inline constexpr double kGk15Wg[kGk15Nodes] = {
    0.4179591836734693877551020408163265,
    0.0,
    0.3818300505051189449503697754889751,
    0.0,
    0.2797053914892766679014677714237796,
    0.0,
    0.1294849661688696932706114326790820,
    0.0,
};

struct Panel {
  double a;
  double b;
  double value;  // K15 estimate
  double error;  // |K15 - G7|
};

template <class F>
Panel gk15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f0 = f(mid);
  double k15 = kGk15Wk[0] * f0;
  double g7 = kGk15Wg[0] * f0;
  for (int i = 1; i < kGk15Nodes; ++i) {
    const double dx = half * kGk15X[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    k15 += kGk15Wk[i] * fsum;
    g7 += kGk15Wg[i] * fsum;
  }
  k15 *= half;
  g7 *= half;
  return {a, b, k15, std::fabs(k15 - g7)};
}

inline bool panel_less(const Panel& p, const Panel& q) {
  // heap priority: largest error first, ties broken by position
  if (p.error != q.error) return p.error < q.error;
  if (p.a != q.a) return p.a > q.a;
  return p.b > q.b;
}

}  // namespace detail

// Integrate f over [a, b] until the summed panel error estimates fall below
// rel_tol * |integral|. rel_tol must lie in (0, 1). Throws ConvergenceError
// if max_panels bisections do not reach the tolerance.
template <class F>
QuadratureResult adaptive_integrate(F&& f, double a, double b, double rel_tol = 1e-9,
                                    int max_panels = 1'000'000) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw std::invalid_argument("adaptive_integrate: need finite a < b");
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw std::domain_error("adaptive_integrate: rel_tol must lie in (0, 1)");

  std::vector<detail::Panel> heap;      // active panels, max-heap by error
  std::vector<detail::Panel> settled;   // panels too narrow to bisect further
  heap.push_back(detail::gk15(f, a, b));

  double total_value = heap.front().value;
  double total_error = heap.front().error;
  int panels = 1;

  const auto resum = [&] {
    std::vector<detail::Panel> all = settled;
    all.insert(all.end(), heap.begin(), heap.end());
    std::sort(all.begin(), all.end(),
              [](const detail::Panel& p, const detail::Panel& q) { return p.a < q.a; });
    double v = 0.0, e = 0.0, v_abs = 0.0;
    for (const auto& p : all) {
      v += p.value;
      e += p.error;
      v_abs += std::fabs(p.value);
    }
    // the estimate cannot honestly drop below the roundoff of the summation
    e = std::max(e, 50.0 * std::numeric_limits<double>::epsilon() * v_abs);
    return QuadratureResult{v, e, panels};
  };

  for (;;) {
    if (total_error <= rel_tol * std::fabs(total_value)) {
      const QuadratureResult r = resum();
      if (r.error_estimate <= rel_tol * std::fabs(r.value)) return r;
      // incremental tracker drifted below the re-summed totals; resync
      total_value = r.value;
      total_error = r.error_estimate;
      continue;
    }
    if (heap.empty() || panels >= max_panels) {
      const QuadratureResult best = resum();
      throw ConvergenceError("adaptive_integrate: tolerance not reached within panel budget",
                             best.value, best.error_estimate);
    }

    std::pop_heap(heap.begin(), heap.end(), detail::panel_less);
    const detail::Panel worst = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // interval is at machine resolution; keep its estimate as is
      settled.push_back(worst);
      continue;
    }

    const detail::Panel left = detail::gk15(f, worst.a, mid);
    const detail::Panel right = detail::gk15(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), detail::panel_less);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), detail::panel_less);
    ++panels;
  }
}

}  // namespace onef
