#pragma once

#include <array>
#include <vector>

#include "minkflow/family.hpp"
#include "minkflow/geometry.hpp"

namespace minkflow {

// Curvature samples k(theta_i) of a convex curve at one instant. The flow
// works entirely in this representation; positions are reconstructed on
// demand. translation_acc carries the accumulated motion of the theta = 0
// marker point,
//   ( int_0^t a(0,s) k(0,s) ds,  int_0^t a(0,s) k'(0,s) + a'(0,s) k(0,s) ds ),
// which the reconstruction formula subtracts.
struct CurvatureState {
  AngleGrid grid{8};
  double t = 0.0;
  std::vector<double> k;
  std::array<double, 2> translation_acc{0.0, 0.0};
};

// Reconstructed curve with per-sample diagnostics.
struct CurveSnapshot {
  AngleGrid grid{8};
  double t = 0.0;
  std::vector<Vec2> points;    // F(theta_i)
  std::vector<Vec2> tangent;   // dF/dtheta = lambda * q
  std::vector<double> lambda;  // a(a + a'')/k
  std::vector<double> k;
  std::array<double, 2> closing_residual{0.0, 0.0};
  bool closed = false;
};

// Q-length: integral of lambda = a(a + a'')/k over the circle.
double q_length(const CurvatureState& state, const GaugeSamples& g);

// Enclosed area of the curve, (1/2) * integral of [F, dF/dtheta].
double curve_area(const CurveSnapshot& snap);

// Median curvature k*: the largest value attained on every arc covering at
// least half the samples. Computed as the max over cyclic windows of
// n/2 + 1 consecutive samples of the window minimum.
double median_curvature(const std::vector<double>& k);

}  // namespace minkflow
