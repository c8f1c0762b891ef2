#pragma once

#include <limits>
#include <string>
#include <vector>

#include "minkflow/solver.hpp"

namespace minkflow {

// Outcome of one verification scan over a flow trace.
struct CheckReport {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // worst observed deviation / margin
  double tolerance = 0.0;  // threshold applied
  std::string detail;
};

// Q-length evolution identity (nonuniform centered differences on the
// recorded q_length column):
//   dL_Q/dt = -int k^2 lambda dtheta + int dlog(a)/dt lambda dtheta.
// Deviations are normalized residual-style by max(|fd|, |rhs|, |terms|), so
// records where the two integrals cancel don't amplify FD noise.
CheckReport check_qlength_evolution(const FlowTrace& trace,
                                    const PlaneFamily& family,
                                    double tol = 1e-3);

// Gronwall bound L_Q(t) <= exp(M t) L_Q(0) (1 + tol) with
// M >= sup dlog(a)/dt over the run. Pass M = NaN to use the family's sup;
// an M below the observed sup throws std::invalid_argument.
CheckReport check_gronwall(const FlowTrace& trace, const PlaneFamily& family,
                           double m = std::numeric_limits<double>::quiet_NaN(),
                           double tol = 1e-6);

// For homothetic families: entropy identity
//   dE/dt = int (a0 k)^2 - ((a0 k)')^2  (= sq_fun - grad_fun)
// checked by finite differences at interior records (normalized like the
// q-length identity), plus the lower bound
//   E(t) + I0 log f(t) >= I0 log k_min(0),   I0 = int a0 (a0 + a0''),
// and the empirical constant N = sup over records of (grad_fun - sq_fun).
struct EntropyReport {
  CheckReport identity;
  CheckReport lower_bound;
  double empirical_n = 0.0;
  double empirical_n_time = 0.0;  // record time where the sup is attained
};
EntropyReport check_entropy(const FlowTrace& trace, const PlaneFamily& family,
                            double tol = 1e-3);

// Median-curvature estimate k* <= C(t) L_Q / A at every record; for
// homothetic families additionally verifies C(t_end) == C(0) to 1e-12
// relative.
CheckReport check_median_bound(const FlowTrace& trace,
                               const PlaneFamily& family);

// Area law |area_curve - area_analytic| <= tol_frac * A(0) at every record.
CheckReport check_area_law(const FlowTrace& trace, double tol_frac = 1e-6);

// Isoperimetric-ratio evolution: FD of L_Q^2/A against
//   -(2L/A)(int k^2 ds - A(P_t) L/A) + (2L/A) int dlog(a)/dt ds.
CheckReport check_isoperimetric(const FlowTrace& trace,
                                const PlaneFamily& family, double tol = 1e-3);

std::vector<CheckReport> run_all_checks(const FlowTrace& trace,
                                        const PlaneFamily& family);

}  // namespace minkflow
