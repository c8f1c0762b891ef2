#include "minkflow/experiments.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "minkflow/errors.hpp"

namespace minkflow {

CurvatureState initial_from_support(const FourierSeries& h,
                                    const GaugeSamples& g0) {
  const int n = g0.grid.size();
  CurvatureState state;
  state.grid = g0.grid;
  state.t = 0.0;
  state.k.resize(n);
  for (int i = 0; i < n; ++i) {
    double th = g0.grid.theta(i);
    double hh = h.value(th) + h.second_derivative(th);
    if (!(hh >= kConvexityEps))
      throw ConvexityError(
          "support function is not strictly convex (h + h'' = " +
          std::to_string(hh) + " at theta = " + std::to_string(th) + ")");
    state.k[i] = g0.conv[i] / hh;
  }
  return state;
}

CurvatureState InitialData::build(const GaugeSamples& g0) const {
  if (kind == Kind::FromSupport) return initial_from_support(h, g0);
  const int n = g0.grid.size();
  CurvatureState state;
  state.grid = g0.grid;
  state.t = 0.0;
  if (explicit_k.empty()) {
    if (!(uniform_k > 0.0))
      throw std::invalid_argument("explicit initial curvature must be positive");
    state.k.assign(n, uniform_k);
  } else {
    if (int(explicit_k.size()) != n)
      throw std::invalid_argument(
          "explicit initial curvature has " +
          std::to_string(explicit_k.size()) + " samples, grid needs " +
          std::to_string(n));
    state.k = explicit_k;
  }
  return state;
}

double extinction_bound(double a0, double b) {
  if (!(a0 > 0.0) || !(b > 0.0))
    throw std::invalid_argument("extinction_bound: areas must be positive");
  return a0 / (2.0 * b);
}

BlowupReport blowup_study(const GaugeProfile& a0, const InitialData& u0,
                          const std::vector<FSpec>& fspecs,
                          const SolverConfig& config) {
  config.validate();
  const AngleGrid grid(config.n);

  BlowupReport report;
  // A0 and B are shared: every family starts from the same gauge (f(0) = 1)
  // and the same curve.
  PlaneFamily base = PlaneFamily::fixed(a0);
  GaugeSamples g0 = base.sample(grid, 0.0);
  CurvatureState initial = u0.build(g0);
  {
    SpectralDifferentiator diff(grid.size());
    CurveSnapshot snap = reconstruct(initial, g0, diff, kClosingTolFactor);
    report.initial_area = curve_area(snap);
  }
  report.ball_area0 = ball_area(g0);
  report.bound_t = extinction_bound(report.initial_area, report.ball_area0);
  report.bound_section3 = report.initial_area / report.ball_area0;
  report.passed = true;

  for (const FSpec& fspec : fspecs) {
    PlaneFamily family = PlaneFamily::homothetic(a0, fspec);
    FlowTrace trace = evolve(initial, family, config);
    const FlowRecord& last = trace.records.back();

    BlowupRow row;
    row.f_desc = fspec.describe();
    row.t_last = trace.t_final;
    row.dt_last = trace.dt_last;
    row.reason = to_string(trace.reason);
    row.bound_t = report.bound_t;
    if (trace.reason == Termination::kAreaFloor) {
      // extrapolate the area law dA/dt = -2 f^2 A(P_0) past the floor
      double f = fspec.f(trace.t_final);
      row.t_terminal =
          trace.t_final + last.area_curve / (2.0 * f * f * report.ball_area0);
    } else {
      row.t_terminal = trace.t_final;
    }
    row.slack = row.bound_t - row.t_terminal;
    if (trace.reason == Termination::kInvariantViolation ||
        row.slack < -2.0 * row.dt_last)
      report.passed = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace minkflow
