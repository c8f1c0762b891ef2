#pragma once

#include <string>
#include <vector>

#include "minkflow/solver.hpp"

namespace minkflow {

// Initial curvature data: either explicit samples or derived from a support
// function h via k0 = (a + a'')/(h + h'').
struct InitialData {
  enum class Kind { FromSupport, ExplicitK };

  Kind kind = Kind::FromSupport;
  FourierSeries h{1.0, {}};        // support function (FromSupport)
  std::vector<double> explicit_k;  // samples on the run grid (ExplicitK)
  double uniform_k = 0.0;          // broadcast value when explicit_k empty

  CurvatureState build(const GaugeSamples& g0) const;
};

// k0 = (a + a'')/(h + h'') on the grid. The closing conditions hold
// automatically: (a+a'')/k0 = h+h'' and its first harmonics vanish for any
// closed curve. Throws ConvexityError when h + h'' is not strictly positive.
CurvatureState initial_from_support(const FourierSeries& h,
                                    const GaugeSamples& g0);

// Upper bound T = A0/(2B) on the extinction time; A0 the initial enclosed
// area, B the unit-ball area at t = 0 (the infimum of f(t)^2 A(P_0) for
// nondecreasing f).
double extinction_bound(double a0, double b);

struct BlowupRow {
  std::string f_desc;
  double t_terminal = 0.0;  // extinction estimate (area_floor) or last t
  double t_last = 0.0;      // last computed step time
  std::string reason;
  double bound_t = 0.0;
  double slack = 0.0;  // bound_t - t_terminal
  double dt_last = 0.0;
};

struct BlowupReport {
  double initial_area = 0.0;     // A0, shared by all rows
  double ball_area0 = 0.0;       // B = A(P_0)
  double bound_t = 0.0;          // A0/(2B)
  double bound_section3 = 0.0;   // looser companion A0/B
  bool passed = false;           // every slack >= -2*dt_last, no violations
  std::vector<BlowupRow> rows;
};

// Runs the flow for the same initial curve under each time profile f and
// compares terminal times against the extinction bound. For runs ending at
// the area floor the terminal time extrapolates the area law past the floor,
//   t = t_last + A(t_last) / (2 f(t_last)^2 A(P_0)),
// which is exact for f constant and within O(A_floor^2) otherwise; blow-up
// runs report the last computed time.
BlowupReport blowup_study(const GaugeProfile& a0, const InitialData& u0,
                          const std::vector<FSpec>& fspecs,
                          const SolverConfig& config);

}  // namespace minkflow
