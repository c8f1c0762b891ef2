#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "minkflow/geometry.hpp"

using namespace minkflow;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("wedge and frame vectors") {
  CHECK(wedge({1, 0}, {0, 1}) == 1.0);
  CHECK(wedge({2, 3}, {4, 5}) == doctest::Approx(-2.0));
  for (double th : {0.0, 0.7, 2.1, 5.5}) {
    CHECK(wedge(radial_dir(th), angular_dir(th)) == doctest::Approx(1.0));
    CHECK(radial_dir(th).norm() == doctest::Approx(1.0));
  }
  Vec2 v{3, 4};
  CHECK(v.norm() == doctest::Approx(5.0));
  CHECK((2.0 * v).x == doctest::Approx(6.0));
  CHECK((v - Vec2{1, 1}).y == doctest::Approx(3.0));
}

TEST_CASE("angle grid layout") {
  AngleGrid g(8);
  CHECK(g.size() == 8);
  CHECK(g.spacing() == doctest::Approx(pi / 4));
  CHECK(g.theta(0) == 0.0);
  CHECK(g.theta(2) == doctest::Approx(pi / 2));
  CHECK(g.wrap(-1) == 7);
  CHECK(g.wrap(9) == 1);
  CHECK(g.thetas().size() == 8);
  CHECK(g == AngleGrid(8));
  CHECK_FALSE(g == AngleGrid(16));
}

TEST_CASE("angle grid rejects bad sizes") {
  CHECK_THROWS_AS(AngleGrid(7), std::invalid_argument);
  CHECK_THROWS_AS(AngleGrid(6), std::invalid_argument);
  CHECK_THROWS_AS(AngleGrid(0), std::invalid_argument);
  CHECK_THROWS_AS(AngleGrid(-8), std::invalid_argument);
}

TEST_CASE("periodic integral is exact on low trig polynomials") {
  AngleGrid g(16);
  std::vector<double> ones(16, 1.0), cos2(16);
  for (int i = 0; i < 16; ++i) {
    double c = std::cos(g.theta(i));
    cos2[i] = c * c;
  }
  CHECK(periodic_integral(g, ones) == doctest::Approx(2 * pi));
  CHECK(periodic_integral(g, cos2) == doctest::Approx(pi).epsilon(1e-14));
}

TEST_CASE("fourier series values and derivatives") {
  FourierSeries s(1.0, {{3, 2.0, 0.0}, {2, 0.0, -0.5}});
  CHECK(s.max_order() == 3);
  for (double th : {0.3, 1.1, 4.0}) {
    double v = 1.0 + 2.0 * std::cos(3 * th) - 0.5 * std::sin(2 * th);
    double dv = -6.0 * std::sin(3 * th) - std::cos(2 * th);
    double ddv = -18.0 * std::cos(3 * th) + 2.0 * std::sin(2 * th);
    CHECK(s.value(th) == doctest::Approx(v).epsilon(1e-14));
    CHECK(s.derivative(th) == doctest::Approx(dv).epsilon(1e-14));
    CHECK(s.second_derivative(th) == doctest::Approx(ddv).epsilon(1e-14));
  }
  CHECK_THROWS_AS(FourierSeries(1.0, {{0, 1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(FourierSeries(1.0, {{-2, 1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("gauge profile wants even harmonics and a positive mean") {
  GaugeProfile p(1.0, {{2, 0.3, 0.0}});
  CHECK(p.value(0.0) == doctest::Approx(1.3));
  CHECK(p.second_derivative(0.0) == doctest::Approx(-1.2));
  CHECK_THROWS_AS(GaugeProfile(1.0, {{3, 0.1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(GaugeProfile(1.0, {{1, 0.0, 0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(GaugeProfile(0.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(GaugeProfile(-1.0, {}), std::invalid_argument);
}
