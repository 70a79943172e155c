#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "onef/fit.hpp"
#include "onef/grid.hpp"
#include "onef/model.hpp"
#include "onef/synth.hpp"

using namespace onef;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SpectrumSamples samples_from(const CanonicalParams& cp, const std::vector<double>& freqs,
                             double sigma = 0.0, std::uint64_t seed = 0) {
  detail::NormalStream normals(seed);
  std::vector<SpectrumSample> pts;
  pts.reserve(freqs.size());
  for (double f : freqs) {
    double p = cp.psd(f);
    if (sigma > 0.0) p *= std::exp(sigma * normals.next());
    pts.push_back({f, p});
  }
  return SpectrumSamples(std::move(pts));
}

}  // namespace

TEST_CASE("canonical parameters collapse (i0, alpha0, T) to (A, B, y)") {
  const FiniteSignalModel m(DissipationParams(1.0, 0.4, 1.2), 5.0);
  const CanonicalParams cp = CanonicalParams::from_model(m);
  REQUIRE_THAT(cp.a(), WithinRel(2.5, 1e-15));
  REQUIRE_THAT(cp.b(), WithinRel(2.0, 1e-15));
  REQUIRE(cp.y() == 1.2);
  REQUIRE_THAT(cp.plateau(), WithinRel(low_freq_limit(m), 1e-15));

  // two triples with equal (A, B, y) produce pointwise identical spectra
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> unit(0.1, 10.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double i0 = unit(rng), alpha0 = unit(rng), t = unit(rng), k = unit(rng);
    const FiniteSignalModel m1(DissipationParams(i0, alpha0, 1.3), t);
    const FiniteSignalModel m2(DissipationParams(k * i0, k * alpha0, 1.3), t / k);
    for (double f : logspace(1e-3, 1e3, 25)) {
      REQUIRE_THAT(psd_finite(m1, f), WithinRel(psd_finite(m2, f), 1e-12));
    }
    const CanonicalParams c1 = CanonicalParams::from_model(m1);
    for (double f : logspace(1e-3, 1e3, 25)) {
      REQUIRE_THAT(c1.psd(f), WithinRel(psd_finite(m1, f), 1e-12));
    }
  }
}

TEST_CASE("exact samples are recovered to high accuracy") {
  const CanonicalParams truth(2.0, 5.0, 1.2);
  const SpectrumSamples samples = samples_from(truth, logspace(1e-3, 1e2, 50));
  const FitResult fit = fit_spectrum(samples);

  REQUIRE(fit.converged);
  REQUIRE(fit.residual < 1e-10);
  REQUIRE_THAT(fit.params.a(), WithinRel(truth.a(), 1e-6));
  REQUIRE_THAT(fit.params.b(), WithinRel(truth.b(), 1e-6));
  REQUIRE_THAT(fit.params.y(), WithinRel(truth.y(), 1e-6));

  // plateau law: fitted A*B reproduces the model plateau
  REQUIRE_THAT(fit.params.plateau(), WithinRel(truth.plateau(), 1e-6));
}

TEST_CASE("fitting is deterministic") {
  const CanonicalParams truth(0.7, 0.9, 0.8);
  const SpectrumSamples samples = samples_from(truth, logspace(1e-2, 1e2, 40), 0.05, 7);
  const FitResult a = fit_spectrum(samples);
  const FitResult b = fit_spectrum(samples);
  REQUIRE(a.params.a() == b.params.a());
  REQUIRE(a.params.b() == b.params.b());
  REQUIRE(a.params.y() == b.params.y());
  REQUIRE(a.residual == b.residual);
  REQUIRE(a.iterations == b.iterations);
}

TEST_CASE("an explicit initial guess is honoured") {
  const CanonicalParams truth(2.0, 5.0, 1.2);
  const SpectrumSamples samples = samples_from(truth, logspace(1e-3, 1e2, 50));
  const FitResult fit = fit_spectrum(samples, CanonicalParams(1.0, 1.0, 1.0));
  REQUIRE(fit.converged);
  REQUIRE_THAT(fit.params.a(), WithinRel(truth.a(), 1e-6));
  REQUIRE_THAT(fit.params.b(), WithinRel(truth.b(), 1e-6));
  REQUIRE_THAT(fit.params.y(), WithinRel(truth.y(), 1e-6));
}

TEST_CASE("the flat-spectrum boundary case recovers y = 0") {
  const CanonicalParams truth(2.0, 5.0, 0.0);
  const SpectrumSamples samples = samples_from(truth, logspace(1e-3, 1e2, 50));
  const FitResult fit = fit_spectrum(samples);
  REQUIRE(fit.converged);
  REQUIRE_THAT(fit.params.y(), WithinAbs(0.0, 1e-6));
}

TEST_CASE("noisy samples recover the parameters within a few percent") {
  const CanonicalParams truth(2.0, 5.0, 1.2);
  const auto freqs = logspace(1e-3, 1e2, 50);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SpectrumSamples samples = samples_from(truth, freqs, 0.01, seed);
    const FitResult fit = fit_spectrum(samples);
    REQUIRE(fit.converged);
    REQUIRE_THAT(fit.params.a(), WithinRel(truth.a(), 0.05));
    REQUIRE_THAT(fit.params.b(), WithinRel(truth.b(), 0.05));
    REQUIRE_THAT(fit.params.y(), WithinRel(truth.y(), 0.05));
  }
}

TEST_CASE("fewer than three samples is rejected") {
  std::vector<SpectrumSample> two = {{1.0, 1.0}, {2.0, 0.5}};
  REQUIRE_THROWS_AS(fit_spectrum(SpectrumSamples(two)), std::invalid_argument);
}

TEST_CASE("sample validation") {
  REQUIRE_THROWS_AS(SpectrumSamples({{1.0, 1.0}, {1.0, 0.5}}), std::invalid_argument);
  REQUIRE_THROWS_AS(SpectrumSamples({{2.0, 1.0}, {1.0, 0.5}}), std::invalid_argument);
  REQUIRE_THROWS_AS(SpectrumSamples({{0.0, 1.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(SpectrumSamples({{1.0, 0.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(SpectrumSamples({{1.0, -2.0}}), std::invalid_argument);
}

TEST_CASE("log-log slope of a pure power law is -y") {
  const DissipationParams p(1.0, 1.0, 1.2);
  std::vector<SpectrumSample> pts;
  for (double f : logspace(1.0, 10.0, 30)) pts.push_back({f, psd_infinite(p, f).power});
  const double slope = loglog_slope(SpectrumSamples(std::move(pts)), Band(1.0, 10.0));
  REQUIRE_THAT(slope, WithinAbs(-1.2, 1e-6));

  const DissipationParams flat(1.0, 1.0, 0.0);
  std::vector<SpectrumSample> fpts;
  for (double f : logspace(1.0, 10.0, 30)) fpts.push_back({f, psd_infinite(flat, f).power});
  const double fslope = loglog_slope(SpectrumSamples(std::move(fpts)), Band(1.0, 10.0));
  REQUIRE_THAT(fslope, WithinAbs(0.0, 1e-12));
}

TEST_CASE("log-log slope on the plateau is nearly zero") {
  // B f^y <= 1e-4 on the sampled band
  const FiniteSignalModel m(DissipationParams(1.0, 1.0, 1.0), 1.0);
  std::vector<SpectrumSample> pts;
  for (double f : logspace(1e-6, 1e-4, 20)) pts.push_back({f, psd_finite(m, f)});
  const double slope = loglog_slope(SpectrumSamples(std::move(pts)), Band(1e-6, 1e-4));
  REQUIRE_THAT(slope, WithinAbs(0.0, 1e-3));
}

TEST_CASE("slope crossover between plateau and power-law tail") {
  const FiniteSignalModel m(DissipationParams(1.0, 1.0, 1.0), 1.0);  // crossover at f = 1
  std::vector<SpectrumSample> pts;
  for (double f : logspace(1e-4, 1e4, 200)) pts.push_back({f, psd_finite(m, f)});
  const SpectrumSamples samples(std::move(pts));

  REQUIRE_THAT(loglog_slope(samples, Band(1e-4, 0.1)), WithinAbs(0.0, 0.05));
  REQUIRE_THAT(loglog_slope(samples, Band(10.0, 1e4)), WithinAbs(-1.0, 0.05));
}

TEST_CASE("slope requires two in-band samples") {
  std::vector<SpectrumSample> pts = {{1.0, 1.0}, {2.0, 0.5}, {4.0, 0.25}};
  const SpectrumSamples samples(std::move(pts));
  REQUIRE_THROWS_AS(loglog_slope(samples, Band(5.0, 6.0)), std::invalid_argument);
}
