#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "minkflow/geometry.hpp"

namespace minkflow {

// Time profile f(t) of a homothetic gauge family: positive, nondecreasing,
// f(0) = 1.
struct FSpec {
  enum class Kind { Constant, Linear, Exponential };

  Kind kind = Kind::Constant;
  double c = 0.0;  // Linear: f = 1 + c*t; Exponential: f = exp(c*t); c >= 0

  static FSpec constant() { return {Kind::Constant, 0.0}; }
  static FSpec linear(double c);
  static FSpec exponential(double c);

  double f(double t) const;
  double fdot(double t) const;
  double log_rate(double t) const;  // fdot/f
  // sup over [0, t_end] of fdot/f, the Gronwall constant for this profile.
  double sup_log_rate(double t_end) const;
  std::string describe() const;
};

// Instantaneous gauge a(theta, t) sampled on a grid, with exact theta
// derivatives and the time rates the evolution equation needs.
struct GaugeSamples {
  AngleGrid grid{8};
  double t = 0.0;
  std::vector<double> a;
  std::vector<double> da;
  std::vector<double> dda;
  std::vector<double> conv;  // a + a''
  std::vector<double> dlog_a_dt;
  std::vector<double> dlog_conv_dt;
};

// A time-indexed family of gauges. Immutable after construction.
class PlaneFamily {
 public:
  static PlaneFamily fixed(GaugeProfile profile);
  static PlaneFamily homothetic(GaugeProfile profile, FSpec fspec);
  // Linear-in-t interpolation of the gauge samples between knots; constant
  // extrapolation outside the knot range.
  static PlaneFamily tabulated(std::vector<std::pair<double, GaugeProfile>> knots);

  GaugeSamples sample(const AngleGrid& grid, double t) const;

  // True for fixed and homothetic variants, where a(theta,t) = f(t)*a0(theta)
  // and the entropy/gradient functionals are defined.
  bool homothetic_form() const;
  const GaugeProfile& base() const;  // a0; throws for tabulated families
  double f(double t) const;          // throws for tabulated families
  double fdot(double t) const;
  std::string describe() const;

  // sup over [0, t_end] x S^1 of d(log a)/dt; valid Gronwall constant.
  double sup_log_a_rate(double t_end) const;

 private:
  friend class FamilySampler;

  struct Fixed {
    GaugeProfile profile;
  };
  struct Homothetic {
    GaugeProfile profile;
    FSpec fspec;
  };
  struct Tabulated {
    std::vector<std::pair<double, GaugeProfile>> knots;
  };

  explicit PlaneFamily(std::variant<Fixed, Homothetic, Tabulated> v)
      : variant_(std::move(v)) {}

  std::variant<Fixed, Homothetic, Tabulated> variant_;
};

// Caches the time-independent part of a family on one grid so the solver can
// sample per Runge-Kutta stage without re-evaluating trigonometric series.
class FamilySampler {
 public:
  FamilySampler(const PlaneFamily& family, const AngleGrid& grid);

  // Fills `out` with the gauge at time t; validates positivity and strict
  // convexity (throws ConvexityError).
  void fill(double t, GaugeSamples& out) const;
  GaugeSamples operator()(double t) const;

  const AngleGrid& grid() const { return grid_; }

 private:
  struct Knot {
    double t;
    std::vector<double> a, da, dda;
  };

  const PlaneFamily* family_;
  AngleGrid grid_;
  std::vector<Knot> knots_;  // one knot for fixed/homothetic
};

// Strict-convexity floor on a + a''.
inline constexpr double kConvexityEps = 1e-8;

struct BallBoundary {
  std::vector<Vec2> p;   // a e_r + a' e_theta
  std::vector<Vec2> dp;  // (a + a'') e_theta
};

// Boundary of the unit ball and its theta-derivative. Rejects gauges that
// violate strict convexity.
BallBoundary unit_ball_boundary(const GaugeSamples& g);

// Dual-ball boundary q = p' / [p, p']; equals e_theta / a.
std::vector<Vec2> dual_boundary(const GaugeSamples& g);

// Enclosed area of the unit ball, (1/2) * integral of a(a + a'').
double ball_area(const GaugeSamples& g);

// Constant in the median-curvature estimate k* <= C * L_Q / A:
// C = (max 1/a)^2 * max a(a + a'').
double median_bound_constant(const GaugeSamples& g);

}  // namespace minkflow
