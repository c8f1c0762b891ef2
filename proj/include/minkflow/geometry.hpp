#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace minkflow {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

// Planar determinant [x, y] = x1*y2 - x2*y1.
inline double wedge(Vec2 x, Vec2 y) { return x.x * y.y - x.y * y.x; }

inline Vec2 radial_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline Vec2 angular_dir(double theta) { return {-std::sin(theta), std::cos(theta)}; }

// Uniform periodic grid theta_i = 2*pi*i/n on [0, 2*pi); n even, >= 8.
class AngleGrid {
 public:
  explicit AngleGrid(int n);

  int size() const { return n_; }
  double spacing() const { return dtheta_; }
  double theta(int i) const { return (kTwoPi * i) / n_; }
  int wrap(int i) const {
    int r = i % n_;
    return r < 0 ? r + n_ : r;
  }
  std::vector<double> thetas() const;

  friend bool operator==(const AngleGrid& a, const AngleGrid& b) {
    return a.n_ == b.n_;
  }

 private:
  int n_;
  double dtheta_;
};

// Full-period trapezoid rule; on a periodic grid this is just dtheta * sum
// and is spectrally accurate for smooth periodic integrands.
inline double periodic_integral(const AngleGrid& grid, std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return grid.spacing() * s;
}

// Real trigonometric polynomial c0 + sum_m (c_m cos(m theta) + s_m sin(m theta))
// with exact derivatives of any order.
class FourierSeries {
 public:
  struct Term {
    int order = 0;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
  };

  FourierSeries() = default;
  FourierSeries(double constant, std::vector<Term> terms);

  double constant() const { return constant_; }
  const std::vector<Term>& terms() const { return terms_; }
  int max_order() const;

  double value(double theta) const;
  double derivative(double theta) const;
  double second_derivative(double theta) const;

 private:
  double constant_ = 0.0;
  std::vector<Term> terms_;
};

// Radial profile of a unit-ball boundary, restricted to even harmonics so that
// pi-periodicity (central symmetry) holds by construction.
class GaugeProfile {
 public:
  GaugeProfile() : GaugeProfile(1.0, {}) {}
  GaugeProfile(double c0, std::vector<FourierSeries::Term> even_terms);

  const FourierSeries& series() const { return series_; }
  double value(double theta) const { return series_.value(theta); }
  double derivative(double theta) const { return series_.derivative(theta); }
  double second_derivative(double theta) const {
    return series_.second_derivative(theta);
  }

 private:
  FourierSeries series_;
};

}  // namespace minkflow
