#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "minkflow/family.hpp"
#include "minkflow/spectral.hpp"
#include "minkflow/state.hpp"

namespace minkflow {

struct SolverConfig {
  int n = 256;
  double cfl = 0.2;
  double stop_area_frac = 1e-3;
  double stop_kmax = 1e6;
  double t_max = std::numeric_limits<double>::infinity();
  int record_every = 10;
  std::vector<double> snapshot_times;

  void validate() const;  // throws std::invalid_argument
};

enum class Termination {
  kAreaFloor,           // curve area fell to stop_area_frac * initial area
  kBlowup,              // max k exceeded stop_kmax, or dt underflowed
  kTimeLimit,           // reached t_max
  kInvariantViolation,  // k lost positivity/finiteness or closing drifted
};

std::string to_string(Termination t);

// One row of the flow trace. Quantities are evaluated from the state at time
// t; dt is the step that produced it (0 for the initial row).
struct FlowRecord {
  double t = 0.0;
  double dt = 0.0;
  double area_curve = 0.0;
  double area_analytic = 0.0;
  double q_length = 0.0;
  double iso_ratio = 0.0;  // q_length^2 / area_curve
  double k_min = 0.0;
  double k_max = 0.0;
  double k_star = 0.0;
  double c_bound = 0.0;  // C(t) * q_length / area_curve
  double entropy = 0.0;  // int a0(a0+a0'') log(k/f); NaN when not homothetic
  double grad_fun = 0.0;  // int ((a0 k)')^2
  double sq_fun = 0.0;    // int (a0 k)^2
  std::array<double, 2> closing_residual{0.0, 0.0};
  std::vector<double> k;  // state copy for verification scans
};

struct FlowTrace {
  std::vector<FlowRecord> records;
  std::vector<CurveSnapshot> snapshots;
  Termination reason = Termination::kAreaFloor;
  double t_final = 0.0;
  double dt_last = 0.0;
  double initial_area = 0.0;
};

// Residual of the closing conditions:
//   ( integral (a+a'')/k sin, integral (a+a'')/k cos ).
std::array<double, 2> closing_residual(const CurvatureState& state,
                                       const GaugeSamples& g);

// Right-hand side of the curvature evolution equation
//   dk/dt = a/(a+a'') k^2 k'' + 2a'/(a+a'') k^2 k' + k^3 + dlog(a+a'')/dt * k.
// diff must match the state grid.
std::vector<double> evolution_rhs(const CurvatureState& state,
                                  const GaugeSamples& g,
                                  SpectralDifferentiator& diff);

// Parabolic step size: cfl * dtheta^2 / max(k^2 a/(a+a'')). The caller caps
// it further so steps land exactly on snapshot times and t_max.
double adaptive_dt(const CurvatureState& state, const GaugeSamples& g,
                   double cfl);

// One classical RK4 step of the method of lines; returns the state at t + dt
// with translation_acc advanced by the trapezoid rule across the step
// endpoints. dt = 0 returns the state unchanged.
CurvatureState rk4_step(const CurvatureState& state,
                        const FamilySampler& sampler,
                        SpectralDifferentiator& diff, double dt);

// Rebuilds curve positions from curvature,
//   F = ( -int_0^theta (a+a'')/k sin - acc_1, int_0^theta (a+a'')/k cos
//   - acc_2 ),
// with the theta-integrals done spectrally so that the spectral dF/dtheta
// matches lambda*q to round-off. When the closing residual exceeds
// tol_factor * max(a+a'')/min(k) the snapshot is flagged open rather than
// rejected.
CurveSnapshot reconstruct(const CurvatureState& state, const GaugeSamples& g,
                          SpectralDifferentiator& diff,
                          double tol_factor);

inline constexpr double kClosingTolFactor = 1e-8;
inline constexpr double kMinInitialK = 1e-6;
inline constexpr double kMinDt = 1e-14;

// Runs the flow from `initial` until a stopping condition fires. Rejects
// initial data that is nonpositive (< kMinInitialK) or fails the closing
// conditions. Records diagnostics every record_every steps, at every
// snapshot time (steps land on them exactly), and at the first and final
// step.
FlowTrace evolve(const CurvatureState& initial, const PlaneFamily& family,
                 const SolverConfig& config);

}  // namespace minkflow
