#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "minkflow/geometry.hpp"
#include "minkflow/spectral.hpp"

using namespace minkflow;

namespace {

std::vector<double> sample(const AngleGrid& g, auto f) {
  std::vector<double> out(g.size());
  for (int i = 0; i < g.size(); ++i) out[i] = f(g.theta(i));
  return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("derivatives of a resolved trig polynomial are exact") {
  AngleGrid g(32);
  SpectralDifferentiator diff(32);
  auto f = [](double t) { return std::sin(3 * t) + std::cos(t); };
  auto df = [](double t) { return 3 * std::cos(3 * t) - std::sin(t); };
  auto ddf = [](double t) { return -9 * std::sin(3 * t) - std::cos(t); };

  std::vector<double> in = sample(g, f), d1(32), d2(32);
  diff.derivative(in, d1);
  CHECK(max_abs_diff(d1, sample(g, df)) < 1e-12);
  diff.second_derivative(in, d2);
  CHECK(max_abs_diff(d2, sample(g, ddf)) < 1e-12);

  std::vector<double> b1(32), b2(32);
  diff.derivatives(in, b1, b2);
  CHECK(max_abs_diff(b1, d1) == 0.0);
  CHECK(max_abs_diff(b2, d2) == 0.0);
}

TEST_CASE("nyquist mode conventions") {
  const int n = 16;
  AngleGrid g(n);
  SpectralDifferentiator diff(n);
  auto in = sample(g, [&](double t) { return std::cos(n / 2 * t); });
  std::vector<double> d1(n), d2(n);
  diff.derivative(in, d1);
  for (double v : d1) CHECK(std::abs(v) < 1e-13);
  diff.second_derivative(in, d2);
  double w = double(n / 2) * (n / 2);
  for (int i = 0; i < n; ++i)
    CHECK(d2[i] == doctest::Approx(-w * in[i]).epsilon(1e-12));
}

TEST_CASE("antiderivative fixes out[0] = 0 and carries the mean linearly") {
  const int n = 32;
  AngleGrid g(n);
  SpectralDifferentiator diff(n);
  std::vector<double> out(n);

  diff.antiderivative(sample(g, [](double t) { return std::cos(t); }), out);
  CHECK(out[0] == 0.0);
  CHECK(max_abs_diff(out, sample(g, [](double t) { return std::sin(t); })) <
        1e-13);

  diff.antiderivative(std::vector<double>(n, 2.0), out);
  for (int i = 0; i < n; ++i)
    CHECK(out[i] == doctest::Approx(2.0 * g.theta(i)).epsilon(1e-13));

  // 1 + cos t -> t + sin t
  diff.antiderivative(sample(g, [](double t) { return 1.0 + std::cos(t); }),
                      out);
  CHECK(max_abs_diff(out, sample(g, [](double t) { return t + std::sin(t); })) <
        1e-13);
}

TEST_CASE("derivative then antiderivative round-trips zero-mean input") {
  const int n = 64;
  AngleGrid g(n);
  SpectralDifferentiator diff(n);
  auto in = sample(g, [](double t) {
    return 0.4 * std::cos(2 * t) - 0.3 * std::sin(5 * t);
  });
  std::vector<double> d(n), back(n);
  diff.derivative(in, d);
  diff.antiderivative(d, back);
  for (int i = 0; i < n; ++i)
    CHECK(back[i] - back[0] ==
          doctest::Approx(in[i] - in[0]).epsilon(1e-12));
}

TEST_CASE("random resolved polynomials differentiate to round-off") {
  const int n = 64;
  AngleGrid g(n);
  SpectralDifferentiator diff(n);
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<FourierSeries::Term> terms;
    for (int m = 1; m <= 10; ++m) terms.push_back({m, 0.1 * u(rng), 0.1 * u(rng)});
    FourierSeries s(u(rng), std::move(terms));
    auto in = sample(g, [&](double t) { return s.value(t); });
    std::vector<double> d1(n), d2(n);
    diff.derivatives(in, d1, d2);
    CHECK(max_abs_diff(d1, sample(g, [&](double t) { return s.derivative(t); })) <
          1e-11);
    CHECK(max_abs_diff(
              d2, sample(g, [&](double t) { return s.second_derivative(t); })) <
          1e-10);
  }
}

TEST_CASE("differentiator size checks") {
  CHECK_THROWS_AS(SpectralDifferentiator(3), std::invalid_argument);
  CHECK_THROWS_AS(SpectralDifferentiator(0), std::invalid_argument);
  SpectralDifferentiator d(8);
  CHECK(d.size() == 8);
  SpectralDifferentiator moved = std::move(d);
  CHECK(moved.size() == 8);
}
