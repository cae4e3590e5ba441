// Copyright 2026 The cochlear-bank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "cochlear/analytic.hpp"
#include "cochlear/distributions.hpp"
#include "cochlear/error.hpp"
#include "cochlear/gammatone.hpp"
#include "cochlear/least_squares.hpp"
#include "cochlear/signature.hpp"
#include "cochlear/spectra.hpp"
#include "support/oracles.hpp"
#include "support/scenarios.hpp"

using namespace cochlear;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

PowerSpectrum grid_spectrum(std::size_t bins, double df, double (*shape)(double)) {
  PowerSpectrum s;
  for (std::size_t k = 1; k <= bins; ++k) {
    const double f = df * static_cast<double>(k);
    s.frequencies.push_back(f);
    s.power.push_back(shape(f));
  }
  return s;
}

AnalyticChannel channel_from_amplitude(const std::vector<double>& amplitude) {
  AnalyticChannel c;
  c.amplitude = amplitude;
  c.phase.assign(amplitude.size(), 0.0);
  c.inst_frequency.assign(amplitude.size(), 0.0);
  c.valid.assign(amplitude.size(), true);
  c.center_frequency = 1000.0;
  c.sample_rate = 8000.0;
  return c;
}

double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace

TEST_SUITE("analytic_signal") {

TEST_CASE("cosine has unit envelope and no residual phase") {
  const double fs = 44100.0;
  const double f0 = 1003.7;
  const std::size_t n = 22050;
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = std::cos(2 * kPi * f0 * static_cast<double>(i) / fs);
  const auto c = analytic_signal(s, 2 * kPi * f0, fs);
  REQUIRE(c.size() == n);
  CHECK(c.inst_frequency.size() == n);
  double err = 0.0;
  double phase = 0.0;
  const std::size_t margin = n / 20;
  for (std::size_t i = margin; i < n - margin; ++i) {
    err += (c.amplitude[i] - 1.0) * (c.amplitude[i] - 1.0);
    phase = std::max(phase, std::abs(c.phase[i]));
  }
  CHECK(std::sqrt(err / static_cast<double>(n - 2 * margin)) < 0.01);
  CHECK(phase < 0.05);
  for (double a : c.amplitude) CHECK(a >= 0.0);
  for (std::size_t i = 1; i < n; ++i) CHECK(std::abs(c.phase[i] - c.phase[i - 1]) <= kPi);
}

TEST_CASE("amplitude-modulated tone envelope is recovered") {
  CHECK(scenarios::am_envelope_error() < 0.02);
}

TEST_CASE("offset tone shows as a constant instantaneous frequency") {
  const double fs = 16000.0;
  const std::size_t n = 16000;
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = std::cos(2 * kPi * 1030.0 * static_cast<double>(i) / fs);
  const auto c = analytic_signal(s, 2 * kPi * 1000.0, fs);
  for (std::size_t i = n / 10; i < n - n / 10; i += 50) {
    CHECK(c.inst_frequency[i] == doctest::Approx(2 * kPi * 30.0).epsilon(1e-3));
  }
}

TEST_CASE("analytic construction is idempotent on positive-frequency signals") {
  const std::size_t n = 1024;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cd> z(n, cd(0.0));
  for (std::size_t k = 1; k < n / 2; ++k) {
    const cd a(g(rng), g(rng));
    for (std::size_t t = 0; t < n; ++t) {
      z[t] += a * std::polar(1.0, 2 * kPi * static_cast<double>(k * t) / static_cast<double>(n));
    }
  }
  const auto again = analytic_samples(std::span<const cd>(z));
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    diff = std::max(diff, std::abs(again[t] - z[t]));
    ref = std::max(ref, std::abs(z[t]));
  }
  CHECK(diff < 1e-10 * ref);

  std::vector<double> re(n);
  for (std::size_t t = 0; t < n; ++t) re[t] = z[t].real();
  const auto from_real = analytic_samples(re);
  double rd = 0.0;
  for (std::size_t t = 0; t < n; ++t) rd = std::max(rd, std::abs(from_real[t] - z[t]));
  CHECK(rd < 1e-10 * ref);
}

TEST_CASE("unwrapping is consistent with the principal values") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> step(-3.0, 3.0);
  std::vector<double> truth(5000);
  truth[0] = 0.3;
  for (std::size_t i = 1; i < truth.size(); ++i) truth[i] = truth[i - 1] + step(rng);
  std::vector<double> wrapped(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) wrapped[i] = std::remainder(truth[i], 2 * kPi);
  const auto un = unwrap_phase(wrapped);
  for (std::size_t i = 0; i < un.size(); ++i) {
    CHECK(std::remainder(un[i] - wrapped[i], 2 * kPi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(un[i] == doctest::Approx(truth[i]).epsilon(1e-9));
    if (i > 0) CHECK(std::abs(un[i] - un[i - 1]) <= kPi);
  }
}

TEST_CASE("silence and short inputs") {
  const std::vector<double> zero(512, 0.0);
  const auto c = analytic_signal(zero, 2 * kPi * 100, 8000);
  CHECK(c.valid_count() == 0);
  for (double a : c.amplitude) CHECK(a == 0.0);
  CHECK(code_of([] { analytic_signal(std::vector<double>(15, 1.0), 10, 8000); }) ==
        ErrorCode::kSignalTooShort);
  CHECK(code_of([] { analytic_signal(std::vector<double>(64, 1.0), 2 * kPi * 5000, 8000); }) ==
        ErrorCode::kNyquistViolation);
}

}  // TEST_SUITE

TEST_SUITE("spectra") {

TEST_CASE("constant envelope has no power after mean removal") {
  const auto p = periodogram(std::vector<double>(1024, 3.0), 100.0, SpectrumSource::kAmplitude);
  CHECK(p.size() == 512);
  CHECK(p.frequencies.front() == doctest::Approx(100.0 / 1024));
  for (double v : p.power) CHECK(v < 1e-25);
}

TEST_CASE("five hertz modulation dominates its spectrum") {
  const double fs = 1000.0;
  std::vector<double> a(4000);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::cos(2 * kPi * 5.0 * i / fs);
  const auto p = periodogram(a, fs, SpectrumSource::kAmplitude);
  const auto peak = std::max_element(p.power.begin(), p.power.end()) - p.power.begin();
  CHECK(p.frequencies[static_cast<std::size_t>(peak)] == doctest::Approx(5.0));
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (static_cast<std::ptrdiff_t>(k) != peak) CHECK(p.power[static_cast<std::size_t>(peak)] > 100 * p.power[k]);
  }
  for (std::size_t k = 1; k < p.size(); ++k) CHECK(p.frequencies[k] > p.frequencies[k - 1]);
  CHECK(code_of([] { periodogram(std::vector<double>(255, 1.0), 10, SpectrumSource::kPhase); }) ==
        ErrorCode::kSignalTooShort);
}

TEST_CASE("periodogram satisfies Parseval") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(2048);
  for (auto& v : x) v = g(rng);
  const double m = mean(x);
  double energy = 0.0;
  for (double v : x) energy += (v - m) * (v - m);
  const double fs = 50.0;
  const auto p = periodogram(x, fs, SpectrumSource::kAmplitude);
  // One-sided bins cover each conjugate pair once; Nyquist appears once.
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) total += (k + 1 == p.size() ? 1.0 : 2.0) * p.power[k];
  CHECK(total * fs == doctest::Approx(energy).epsilon(1e-10));
}

TEST_CASE("exact power laws are fitted exactly") {
  const auto steep = grid_spectrum(500, 0.1, [](double f) { return std::pow(f, -1.5); });
  const auto fit = fit_power_law(steep, 0.5, 50.0);
  CHECK(fit.gamma == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.excluded == 0);
  const auto flat = grid_spectrum(500, 0.1, [](double) { return 2.0; });
  CHECK(std::abs(fit_power_law(flat, 0.5, 50.0).gamma) < 1e-10);
  CHECK(fit_power_law(flat, 0.5, 50.0).intercept == doctest::Approx(std::log10(2.0)));
}

TEST_CASE("spectrum averaging and grid checks") {
  const auto two = grid_spectrum(100, 0.5, [](double f) { return 2.0 / f; });
  const auto four = grid_spectrum(100, 0.5, [](double f) { return 4.0 / f; });
  const std::vector<PowerSpectrum> pair{two, four};
  const auto avg = average_spectra(pair);
  for (std::size_t k = 0; k < avg.size(); ++k) {
    CHECK(avg.power[k] == doctest::Approx(3.0 / avg.frequencies[k]));
  }
  const std::vector<PowerSpectrum> one{two};
  CHECK(average_spectra(one).power == two.power);
  const std::vector<PowerSpectrum> same{two, two};
  CHECK(average_spectra(same).power == two.power);
  const std::vector<PowerSpectrum> bad{two, grid_spectrum(100, 0.25, [](double f) { return f; })};
  CHECK(code_of([&] { average_spectra(bad); }) == ErrorCode::kGridMismatch);
  CHECK(code_of([] { average_spectra(std::vector<PowerSpectrum>{}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("fit band must hold enough positive bins") {
  const auto s = grid_spectrum(100, 1.0, [](double f) { return 1.0 / f; });
  CHECK(code_of([&] { fit_power_law(s, 10.0, 16.0); }) == ErrorCode::kInsufficientBins);
  auto holes = s;
  holes.power[20] = 0.0;  // one of 41 bins in [10, 50]
  const auto fit = fit_power_law(holes, 10.0, 50.0);
  CHECK(fit.excluded == 1);
  CHECK(fit.gamma == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t k = 10; k < 20; ++k) holes.power[k] = 0.0;
  CHECK(code_of([&] { fit_power_law(holes, 10.0, 50.0); }) == ErrorCode::kNonpositivePower);
}

TEST_CASE("synthetic 1/f envelope recovers its exponent") {
  const double gamma = scenarios::power_law_recovery(1.0, 8, 77);
  CHECK(std::abs(gamma - 1.0) <= 0.1);
}

}  // TEST_SUITE

TEST_SUITE("distributions") {

TEST_CASE("standardization") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const auto z = standardize(x);
  CHECK(mean(z) == doctest::Approx(0.0).scale(1.0));
  double sq = 0.0;
  for (double v : z) sq += v * v;
  CHECK(sq / 4.0 == doctest::Approx(1.0));
  CHECK(code_of([] { standardize(std::vector<double>(10, 2.0)); }) == ErrorCode::kZeroVariance);
  CHECK(code_of([] { standardize(std::vector<double>{}); }) == ErrorCode::kAllSilent);
}

TEST_CASE("log-amplitude normalization") {
  CHECK(code_of([] { normalize_log_amplitude(channel_from_amplitude(std::vector<double>(64, 0.3))); }) ==
        ErrorCode::kZeroVariance);

  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(100000);
  for (auto& v : x) v = g(rng);
  std::vector<double> amp(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) amp[i] = std::pow(10.0, x[i]);
  const auto out = normalize_log_amplitude(channel_from_amplitude(amp));
  REQUIRE(out.size() == x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d += (out[i] - x[i]) * (out[i] - x[i]);
  CHECK(std::abs(mean(out)) < 1e-2);
  CHECK(d / static_cast<double>(x.size()) < 1e-2);

  std::vector<double> scaled(amp);
  for (auto& v : scaled) v *= 37.5;
  const auto again = normalize_log_amplitude(channel_from_amplitude(scaled));
  for (std::size_t i = 0; i < out.size(); i += 101) CHECK(again[i] == doctest::Approx(out[i]).epsilon(1e-10));

  auto partial = channel_from_amplitude(amp);
  for (std::size_t i = 0; i < 100; ++i) partial.valid[i] = false;
  CHECK(normalize_log_amplitude(partial).size() == amp.size() - 100);
  auto silent = partial;
  silent.valid.assign(silent.size(), false);
  CHECK(code_of([&] { normalize_log_amplitude(silent); }) == ErrorCode::kAllSilent);
}

TEST_CASE("instantaneous frequency is standardized before the modulus") {
  auto c = channel_from_amplitude(std::vector<double>(6, 1.0));
  c.inst_frequency = {1.0, 3.0, 5.0, 7.0, 9.0, 11.0};
  const auto out = normalize_inst_frequency(c);
  const auto z = standardize(c.inst_frequency);
  REQUIRE(out.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(out[i] == doctest::Approx(std::abs(z[i])));
}

TEST_CASE("windowed means") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
  const std::vector<std::size_t> full{7};
  CHECK(windowed_means(x, full) == std::vector<double>{4.0});
  const std::vector<std::size_t> pairs{2, 3};
  CHECK(windowed_means(x, pairs) == std::vector<double>{1.5, 3.5, 5.5, 2.0, 5.0});
  const std::vector<double> c(40, -2.5);
  const std::vector<std::size_t> several{2, 4, 8};
  for (double v : windowed_means(c, several)) CHECK(v == -2.5);
  std::vector<double> alt(64);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 ? -1.0 : 1.0;
  const std::vector<std::size_t> even{2, 4, 16, 64};
  for (double v : windowed_means(alt, even)) CHECK(v == 0.0);
  const std::vector<std::size_t> too_long{8};
  const std::vector<std::size_t> too_short{1};
  CHECK(code_of([&] { windowed_means(x, too_long); }) == ErrorCode::kWindowTooLong);
  CHECK(code_of([&] { windowed_means(x, too_short); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("density histogram") {
  const auto x = oracle::sample_log_amplitude(1.0, 2.0, 20000, 5);
  const auto h = density_histogram(x, 64);
  CHECK(h.centers.size() == 64);
  CHECK(h.total == x.size());
  CHECK(h.lo == doctest::Approx(quantile(x, 0.001)));
  CHECK(h.hi == doctest::Approx(quantile(x, 0.999)));
  double mass = 0.0;
  for (double d : h.densities) mass += d * h.width;
  CHECK(mass == doctest::Approx(0.998).epsilon(1e-3));
  CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
  CHECK(quantile({0.0, 10.0}, 0.25) == 2.5);
}

TEST_CASE("model densities") {
  // p_A integrates to one.
  double area = 0.0;
  for (double x = -20.0; x < 20.0; x += 1e-3) area += log_amplitude_density(x, 1.0, 2.0) * 1e-3;
  CHECK(area == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(inst_frequency_kernel(0.0, 2.0, 3.0) == doctest::Approx(std::pow(4.0, -1.5)));
  // Cauchy case: integral over the line is pi / zeta.
  CHECK(inst_frequency_normalizer(1.0, 2.0, -1e6, 1e6) ==
        doctest::Approx(0.5 / std::atan(1e6)).epsilon(1e-12));
  CHECK(inst_frequency_normalizer(2.0, 2.0, 1.0, 3.0) ==
        doctest::Approx(2.0 / (std::atan(1.5) - std::atan(0.5))).epsilon(1e-12));
  // Student-t with 3 degrees of freedom: (3 + x^2)^{-2}, area pi / (6 sqrt 3).
  CHECK(inst_frequency_normalizer(std::sqrt(3.0), 4.0, -1e4, 1e4) ==
        doctest::Approx(6.0 * std::sqrt(3.0) / kPi).epsilon(1e-9));
}

TEST_CASE("log-amplitude fit recovers sampler parameters") {
  const auto r = scenarios::amplitude_recovery(5);
  CHECK(r.worst_a < 0.05);
  CHECK(r.worst_b < 0.05);
  CHECK(code_of([] { fit_log_amplitude_distribution(std::vector<double>(499, 1.0)); }) ==
        ErrorCode::kInsufficientSamples);
}

TEST_CASE("instantaneous-frequency fit recovers sampler parameters") {
  const auto r = scenarios::frequency_recovery(5);
  CHECK(r.worst_a < 0.10);
  CHECK(r.worst_b < 0.10);
  const auto x = oracle::sample_inst_frequency(1.0, 4.0, 20000, 3);
  const auto fit = fit_inst_frequency_distribution(x);
  CHECK(fit.eta > 1.0);
  CHECK(fit.zeta > 0.0);
  for (double v : {0.1, 0.7, 1.9}) CHECK(fit.density(v) == fit.density(-v));
  CHECK(fit.density(0.0) > fit.density(1e-3));
}

TEST_CASE("pooled-window fits agree across window lengths on stationary data") {
  // Slowly varying Gaussian process mapped onto the p_A marginal.
  const std::size_t n = 1 << 20;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> g(n, 0.0);
  const int tones = 64;
  for (int j = 0; j < tones; ++j) {
    const double cycles = 1.0 + 24.0 * unit(rng);  // over the whole series
    const double ph = 2 * kPi * unit(rng);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] += std::sqrt(2.0 / tones) * std::cos(2 * kPi * cycles * i / n + ph);
    }
  }
  const boost::math::normal normal;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::clamp(boost::math::cdf(normal, g[i]), 1e-12, 1 - 1e-12);
    x[i] = (std::log(-std::log1p(-u)) + 1.0) / 2.0;
  }
  std::vector<AmplitudeFit> fits;
  for (std::size_t w : {32u, 128u, 512u}) {
    const std::vector<std::size_t> one{w};
    fits.push_back(fit_log_amplitude_distribution(windowed_means(x, one)));
  }
  for (const auto& f : fits) {
    CHECK(std::abs(f.alpha / fits.front().alpha - 1.0) < 0.2);
    CHECK(std::abs(f.beta / fits.front().beta - 1.0) < 0.2);
  }
}

}  // TEST_SUITE

TEST_SUITE("least_squares") {

TEST_CASE("exponential model is recovered from exact data") {
  std::vector<double> t(40);
  std::vector<double> y(40);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = 0.1 * static_cast<double>(i);
    y[i] = 2.5 * std::exp(-0.8 * t[i]);
  }
  const auto res = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) {
      r(static_cast<Eigen::Index>(i)) = p(0) * std::exp(p(1) * t[i]) - y[i];
    }
    return r;
  };
  const auto out = damped_gauss_newton(res, Eigen::Vector2d(1.0, -0.1));
  CHECK(out.converged);
  CHECK(out.params(0) == doctest::Approx(2.5).epsilon(1e-7));
  CHECK(out.params(1) == doctest::Approx(-0.8).epsilon(1e-7));
  CHECK(out.cost < 1e-14);
}

TEST_CASE("Rosenbrock valley") {
  const auto res = [](const Eigen::VectorXd& p) {
    return Eigen::Vector2d(10.0 * (p(1) - p(0) * p(0)), 1.0 - p(0)).eval();
  };
  const auto out = damped_gauss_newton(res, Eigen::Vector2d(-1.2, 1.0));
  CHECK(out.params(0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(out.params(1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("non-finite residuals diverge") {
  const auto res = [](const Eigen::VectorXd& p) {
    return Eigen::Vector2d(std::log(p(0) - 10.0), 1.0).eval();
  };
  CHECK(code_of([&] { damped_gauss_newton(res, Eigen::Vector2d(1.0, 0.0)); }) ==
        ErrorCode::kFitDiverged);
}

}  // TEST_SUITE

TEST_SUITE("signature") {

namespace {

// Two broad modes: envelopes fluctuate far faster than the fit band.
SubwavelengthSpectrum broad_spectrum() {
  return oracle::toy_spectrum({cd(2 * kPi * 3000, -2 * kPi * 400), cd(2 * kPi * 6000, -2 * kPi * 400)},
                              {1.0, 1.0});
}

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

}  // namespace

TEST_CASE("white noise has a flat envelope spectrum and scale-free signature") {
  const double fs = 22050.0;
  const auto spec = broad_spectrum();
  const FilterBank bank = build_filter_bank(spec, fs);
  const auto s = noise(static_cast<std::size_t>(4 * fs), 31);
  const auto d = transform(bank, s, fs);
  StatsConfig cfg;
  const auto rep = extract_signature(d, spec, cfg);
  CHECK(std::abs(rep.signature.gamma_A) < 0.15);
  CHECK(rep.used_channels.size() == 2);
  CHECK(rep.signature.beta > 0.0);
  CHECK(rep.signature.zeta > 0.0);
  CHECK(rep.signature.eta > 1.0);
  CHECK(std::isfinite(rep.signature.gamma_phi));

  // A power-of-two gain is exact in floating point, so all six parameters
  // must agree.
  std::vector<double> exact(s);
  for (auto& v : exact) v *= 256.0;
  const auto rep2 = extract_signature(transform(bank, exact, fs), spec, cfg);
  const auto& a = rep.signature;
  const auto& b = rep2.signature;
  for (auto [x, y] : {std::pair{a.gamma_A, b.gamma_A}, {a.alpha, b.alpha}, {a.beta, b.beta},
                      {a.gamma_phi, b.gamma_phi}, {a.zeta, b.zeta}, {a.eta, b.eta}}) {
    CHECK(y == doctest::Approx(x).epsilon(1e-8));
  }

  // Arbitrary gain. White noise puts the p_lambda fit in its Gaussian limit,
  // where (zeta, eta) are not identifiable, so only its input is compared.
  std::vector<double> louder(s);
  for (auto& v : louder) v *= 250.0;
  const auto rep3 = extract_signature(transform(bank, louder, fs), spec, cfg);
  const auto& c = rep3.signature;
  for (auto [x, y] : {std::pair{a.gamma_A, c.gamma_A}, {a.alpha, c.alpha}, {a.beta, c.beta},
                      {a.gamma_phi, c.gamma_phi}}) {
    CHECK(y == doctest::Approx(x).epsilon(1e-8));
  }
  const auto& h1 = rep.frequency_fit.histogram;
  const auto& h3 = rep3.frequency_fit.histogram;
  CHECK(h3.total == h1.total);
  CHECK(h3.lo == doctest::Approx(h1.lo).epsilon(1e-9));
  CHECK(h3.hi == doctest::Approx(h1.hi).epsilon(1e-9));
}

TEST_CASE("constant envelopes end in the zero-variance pathway") {
  const double fs = 8000.0;
  const auto spec = oracle::toy_spectrum({cd(2 * kPi * 1000, -50)}, {1.0});
  ChannelDecomposition d;
  d.sample_rate = fs;
  d.channels.assign(1, std::vector<double>(4 * 8000));
  for (std::size_t i = 0; i < d.channels[0].size(); ++i) {
    d.channels[0][i] = std::cos(2 * kPi * 1000.0 * static_cast<double>(i) / fs);
  }
  d.path_labels = {{1}};
  CHECK(code_of([&] { extract_signature(d, spec, StatsConfig{}); }) == ErrorCode::kZeroVariance);
}

TEST_CASE("signature input validation") {
  const double fs = 8000.0;
  const auto spec = broad_spectrum();
  ChannelDecomposition d;
  d.sample_rate = fs;
  d.channels.assign(2, noise(8000, 1));
  d.path_labels = {{1}, {2}};
  CHECK(code_of([&] { extract_signature(d, spec, StatsConfig{}); }) ==
        ErrorCode::kInsufficientSamples);
  const auto one = oracle::toy_spectrum({cd(2 * kPi * 1000, -50)}, {1.0});
  CHECK(code_of([&] { extract_signature(d, one, StatsConfig{}); }) == ErrorCode::kDimensionMismatch);
  StatsConfig bad;
  bad.fit_f_lo = 60.0;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidArgument);
}

}  // TEST_SUITE
