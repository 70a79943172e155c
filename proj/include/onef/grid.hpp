#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace onef {

// count values from lo to hi inclusive, evenly spaced. count = 1 gives {lo}.
inline std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("linspace: count must be >= 1");
  if (count == 1) return {lo};
  if (!(lo < hi)) throw std::invalid_argument("linspace: need lo < hi");
  std::vector<double> v(count);
  for (int k = 0; k < count; ++k)
    v[k] = lo + (hi - lo) * (static_cast<double>(k) / (count - 1));
  v.back() = hi;
  return v;
}

// count values from lo to hi inclusive, evenly spaced in log. lo must be > 0.
inline std::vector<double> logspace(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("logspace: count must be >= 1");
  if (count == 1) return {lo};
  if (!(lo > 0.0 && lo < hi)) throw std::invalid_argument("logspace: need 0 < lo < hi");
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  std::vector<double> v(count);
  for (int k = 0; k < count; ++k)
    v[k] = std::exp(llo + (lhi - llo) * (static_cast<double>(k) / (count - 1)));
  v.front() = lo;
  v.back() = hi;
  return v;
}

}  // namespace onef
