#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "onef/model.hpp"
#include "onef/samples.hpp"

// Synthetic decaying-envelope grids sampled from the instantaneous-power
// law, and the literal time-quadrature spectrum estimator built on them.

namespace onef {

// Sampled power surface I(f_i, t_k), row-major over frequencies. seed and
// noise_level record how the grid was generated so a run can be reproduced.
struct EnvelopeGrid {
  std::vector<double> freqs;   // strictly increasing, > 0
  std::vector<double> times;   // strictly increasing, from 0 to the duration
  std::vector<double> power;   // freqs.size() x times.size(), all >= 0
  std::uint64_t seed = 0;
  double noise_level = 0.0;

  double at(std::size_t fi, std::size_t ti) const { return power[fi * times.size() + ti]; }
  double& at(std::size_t fi, std::size_t ti) { return power[fi * times.size() + ti]; }

  void validate() const {
    double prev = 0.0;
    for (double f : freqs) {
      if (!(std::isfinite(f) && f > prev))
        throw std::invalid_argument("EnvelopeGrid: freqs must be positive and strictly increasing");
      prev = f;
    }
    if (times.empty() || times.front() != 0.0)
      throw std::invalid_argument("EnvelopeGrid: times must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k)
      if (!(std::isfinite(times[k]) && times[k] > times[k - 1]))
        throw std::invalid_argument("EnvelopeGrid: times must be strictly increasing");
    if (power.size() != freqs.size() * times.size())
      throw std::invalid_argument("EnvelopeGrid: power matrix dimensions do not match grids");
    for (double p : power)
      if (!(p >= 0.0))
        throw std::invalid_argument("EnvelopeGrid: power values must be >= 0");
  }
};

namespace detail {

// Standard normals from an mt19937_64 stream via Box-Muller on 53-bit
// uniforms. std::normal_distribution is implementation-defined, this is not,
// so a seed means the same grid on every platform.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;          // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace detail

// Sample I(f, t) over freqs x times, optionally perturbed by multiplicative
// lognormal noise with log-standard-deviation noise_level (exactly the
// closed form when noise_level = 0). times must run from 0 to the model
// duration. Deterministic for a given seed.
inline EnvelopeGrid synthesize_grid(const FiniteSignalModel& model,
                                    std::vector<double> freqs, std::vector<double> times,
                                    double noise_level = 0.0, std::uint64_t seed = 0) {
  if (!(std::isfinite(noise_level) && noise_level >= 0.0))
    throw std::invalid_argument("synthesize_grid: noise_level must be finite and >= 0");

  EnvelopeGrid grid;
  grid.freqs = std::move(freqs);
  grid.times = std::move(times);
  grid.power.assign(grid.freqs.size() * grid.times.size(), 0.0);
  grid.seed = seed;
  grid.noise_level = noise_level;

  if (grid.times.empty() || grid.times.back() != model.duration())
    throw std::invalid_argument("synthesize_grid: times must end at the model duration");
  grid.validate();

  detail::NormalStream normals(seed);
  for (std::size_t fi = 0; fi < grid.freqs.size(); ++fi) {
    for (std::size_t ti = 0; ti < grid.times.size(); ++ti) {
      double cell = instantaneous_power(model.params(), grid.freqs[fi], grid.times[ti]);
      if (noise_level > 0.0) cell *= std::exp(noise_level * normals.next());
      grid.at(fi, ti) = cell;
    }
  }
  return grid;
}

// Trapezoidal time integration of each frequency row: the finite-duration
// spectrum taken literally as a quadrature over the sampled envelope.
inline SpectrumSamples estimate_psd(const EnvelopeGrid& grid) {
  grid.validate();
  if (grid.times.size() < 2)
    throw std::invalid_argument("estimate_psd: need at least 2 time points");

  std::vector<SpectrumSample> out;
  out.reserve(grid.freqs.size());
  for (std::size_t fi = 0; fi < grid.freqs.size(); ++fi) {
    double acc = 0.0;
    for (std::size_t ti = 0; ti + 1 < grid.times.size(); ++ti) {
      acc += 0.5 * (grid.times[ti + 1] - grid.times[ti]) *
             (grid.at(fi, ti) + grid.at(fi, ti + 1));
    }
    out.push_back({grid.freqs[fi], acc});
  }
  return SpectrumSamples(std::move(out));
}

}  // namespace onef
