#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace onef {

struct SpectrumSample {
  double frequency;
  double power;
};

// Sampled spectrum: (frequency, power) pairs with strictly increasing
// positive frequencies and finite positive powers.
class SpectrumSamples {
 public:
  explicit SpectrumSamples(std::vector<SpectrumSample> points) : points_(std::move(points)) {
    double prev = 0.0;
    for (const auto& s : points_) {
      if (!(std::isfinite(s.frequency) && s.frequency > prev))
        throw std::invalid_argument(
            "SpectrumSamples: frequencies must be positive and strictly increasing");
      if (!(std::isfinite(s.power) && s.power > 0.0))
        throw std::invalid_argument("SpectrumSamples: powers must be finite and > 0");
      prev = s.frequency;
    }
  }

  const std::vector<SpectrumSample>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const SpectrumSample& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<SpectrumSample> points_;
};

}  // namespace onef
