#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "minkflow/errors.hpp"
#include "minkflow/solver.hpp"

using namespace minkflow;

namespace {
constexpr double pi = std::numbers::pi;

PlaneFamily euclidean() { return PlaneFamily::fixed(GaugeProfile(1.0, {})); }

CurvatureState uniform_state(const AngleGrid& grid, double k0) {
  CurvatureState s;
  s.grid = grid;
  s.k.assign(grid.size(), k0);
  return s;
}

double circle_k(double k0, double t) { return k0 / std::sqrt(1.0 - 2.0 * k0 * k0 * t); }

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  SolverConfig bad = cfg;
  bad.n = 7;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.cfl = 0.6;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.cfl = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.stop_area_frac = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.stop_area_frac = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.record_every = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.snapshot_times = {-0.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("termination names") {
  CHECK(to_string(Termination::kAreaFloor) == "area_floor");
  CHECK(to_string(Termination::kBlowup) == "k_blowup");
  CHECK(to_string(Termination::kTimeLimit) == "t_max");
  CHECK(to_string(Termination::kInvariantViolation) == "invariant_violation");
}

TEST_CASE("closing residual oracle") {
  AngleGrid grid(64);
  GaugeSamples g = euclidean().sample(grid, 0.0);
  CurvatureState s;
  s.grid = grid;
  s.k.resize(64);
  for (int i = 0; i < 64; ++i) s.k[i] = 1.0 / (1.0 + 0.2 * std::cos(grid.theta(i)));
  auto res = closing_residual(s, g);
  // int (1 + 0.2 cos) sin = 0, int (1 + 0.2 cos) cos = 0.2 pi
  CHECK(std::abs(res[0]) < 1e-13);
  CHECK(res[1] == doctest::Approx(0.2 * pi).epsilon(1e-13));
}

TEST_CASE("evolution rhs oracles") {
  AngleGrid grid(64);
  SpectralDifferentiator diff(64);

  // a == 1, k = 1 + 0.1 sin t: at t = pi/2 the rhs is k^2 k'' + k^3 = 1.21
  GaugeSamples g = euclidean().sample(grid, 0.0);
  CurvatureState s;
  s.grid = grid;
  s.k.resize(64);
  for (int i = 0; i < 64; ++i) s.k[i] = 1.0 + 0.1 * std::sin(grid.theta(i));
  std::vector<double> rhs = evolution_rhs(s, g, diff);
  CHECK(rhs[16] == doctest::Approx(1.21).epsilon(1e-12));

  // uniform curvature on a static gauge reduces to dk/dt = k^3
  s.k.assign(64, 2.0);
  rhs = evolution_rhs(s, g, diff);
  for (double v : rhs) CHECK(v == doctest::Approx(8.0).epsilon(1e-12));

  // homothetic stretching adds (fdot/f) k
  PlaneFamily exp = PlaneFamily::homothetic(GaugeProfile(1.0, {}), FSpec::exponential(1.0));
  s.t = 0.3;
  rhs = evolution_rhs(s, exp.sample(grid, 0.3), diff);
  for (double v : rhs) CHECK(v == doctest::Approx(8.0 + 2.0).epsilon(1e-12));
}

TEST_CASE("adaptive step size") {
  AngleGrid grid(64);
  GaugeSamples g = euclidean().sample(grid, 0.0);
  CurvatureState s = uniform_state(grid, 2.0);
  double dth = grid.spacing();
  CHECK(adaptive_dt(s, g, 0.2) == doctest::Approx(0.2 * dth * dth / 4.0));
  // doubling the largest curvature quarters the step
  s.k[10] = 4.0;
  CHECK(adaptive_dt(s, g, 0.2) == doctest::Approx(0.2 * dth * dth / 16.0));
}

TEST_CASE("rk4 step basics") {
  AngleGrid grid(32);
  PlaneFamily fam = euclidean();
  FamilySampler sampler(fam, grid);
  SpectralDifferentiator diff(32);
  CurvatureState s = uniform_state(grid, 1.0);

  CurvatureState same = rk4_step(s, sampler, diff, 0.0);
  CHECK(same.t == s.t);
  CHECK(same.k == s.k);
  CHECK(same.translation_acc == s.translation_acc);

  // one step of the circle ODE dk/dt = k^3 is 5th-order accurate
  const double dt = 1e-3;
  CurvatureState next = rk4_step(s, sampler, diff, dt);
  CHECK(next.t == doctest::Approx(dt));
  for (double v : next.k)
    CHECK(std::abs(v - circle_k(1.0, dt)) < 1e-13);

  // marker motion: acc1 = int a k dt, acc2 = 0 on a circle
  CHECK(next.translation_acc[0] ==
        doctest::Approx(0.5 * dt * (1.0 + circle_k(1.0, dt))).epsilon(1e-10));
  CHECK(std::abs(next.translation_acc[1]) < 1e-15);
}

TEST_CASE("reconstruct the euclidean unit circle") {
  AngleGrid grid(64);
  GaugeSamples g = euclidean().sample(grid, 0.0);
  SpectralDifferentiator diff(64);
  CurvatureState s = uniform_state(grid, 1.0);
  CurveSnapshot snap = reconstruct(s, g, diff, kClosingTolFactor);

  CHECK(snap.closed);
  CHECK(std::abs(snap.closing_residual[0]) < 1e-13);
  CHECK(std::abs(snap.closing_residual[1]) < 1e-13);
  for (int i = 0; i < 64; ++i) {
    double th = grid.theta(i);
    CHECK(snap.points[i].x == doctest::Approx(std::cos(th) - 1.0).epsilon(1e-12));
    CHECK(snap.points[i].y == doctest::Approx(std::sin(th)).epsilon(1e-12));
    CHECK(snap.lambda[i] == doctest::Approx(1.0));
    CHECK(snap.tangent[i].x == doctest::Approx(-std::sin(th)));
    CHECK(snap.tangent[i].y == doctest::Approx(std::cos(th)));
  }
  CHECK(curve_area(snap) == doctest::Approx(pi).epsilon(1e-13));
}

TEST_CASE("reconstruct a circle of radius two from its curvature") {
  // h = 2 + 0.5 cos t has h + h'' = 2: curvature 1/2 regardless of the
  // first harmonic, so the rebuilt curve is the radius-2 circle anchored at
  // F(0) = 0
  AngleGrid grid(64);
  GaugeSamples g = euclidean().sample(grid, 0.0);
  SpectralDifferentiator diff(64);
  CurvatureState s = uniform_state(grid, 0.5);
  CurveSnapshot snap = reconstruct(s, g, diff, kClosingTolFactor);
  for (int i = 0; i < 64; ++i) {
    double th = grid.theta(i);
    CHECK(snap.points[i].x == doctest::Approx(2 * std::cos(th) - 2).epsilon(1e-12));
    CHECK(snap.points[i].y == doctest::Approx(2 * std::sin(th)).epsilon(1e-12));
  }
}

TEST_CASE("reconstruct keeps dF/dtheta consistent with lambda q") {
  AngleGrid grid(64);
  const int n = 64;
  GaugeSamples g =
      PlaneFamily::fixed(GaugeProfile(1.0, {{2, 0.3, 0.0}})).sample(grid, 0.0);
  SpectralDifferentiator diff(n);

  // closing holds for k = conv/(h + h'') for any support function h
  FourierSeries h(1.0, {{2, 0.1, 0.0}, {3, 0.0, 0.05}});
  CurvatureState s;
  s.grid = grid;
  s.k.resize(n);
  for (int i = 0; i < n; ++i) {
    double th = grid.theta(i);
    s.k[i] = g.conv[i] / (h.value(th) + h.second_derivative(th));
  }
  CurveSnapshot snap = reconstruct(s, g, diff, kClosingTolFactor);
  CHECK(snap.closed);

  std::vector<double> fx(n), fy(n), dfx(n), dfy(n);
  for (int i = 0; i < n; ++i) {
    fx[i] = snap.points[i].x;
    fy[i] = snap.points[i].y;
  }
  diff.derivative(fx, dfx);
  diff.derivative(fy, dfy);
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(dfx[i] - snap.tangent[i].x) < 1e-8);
    CHECK(std::abs(dfy[i] - snap.tangent[i].y) < 1e-8);
  }
}

TEST_CASE("reconstruct flags non-closing curvature") {
  AngleGrid grid(64);
  GaugeSamples g = euclidean().sample(grid, 0.0);
  SpectralDifferentiator diff(64);
  CurvatureState s;
  s.grid = grid;
  s.k.resize(64);
  for (int i = 0; i < 64; ++i) s.k[i] = 1.0 / (1.0 + 0.2 * std::cos(grid.theta(i)));
  CurveSnapshot snap = reconstruct(s, g, diff, kClosingTolFactor);
  CHECK_FALSE(snap.closed);
  CHECK(snap.closing_residual[1] == doctest::Approx(0.2 * pi));
}

TEST_CASE("evolve a unit circle to the area floor") {
  SolverConfig cfg;
  cfg.n = 64;
  CurvatureState s = uniform_state(AngleGrid(64), 1.0);
  FlowTrace trace = evolve(s, euclidean(), cfg);

  CHECK(trace.reason == Termination::kAreaFloor);
  CHECK(trace.initial_area == doctest::Approx(pi).epsilon(1e-12));
  // extinction at t = 1/2; the floor cuts off at (1 - 1e-3)/2
  CHECK(trace.t_final == doctest::Approx(0.4995).epsilon(1e-4));
  CHECK(trace.records.front().t == 0.0);
  CHECK(trace.records.front().dt == 0.0);
  for (size_t i = 1; i < trace.records.size(); ++i)
    CHECK(trace.records[i].t > trace.records[i - 1].t);
  const FlowRecord& last = trace.records.back();
  CHECK(last.area_curve < 1e-3 * pi);
  CHECK(last.area_curve == doctest::Approx(last.area_analytic).epsilon(1e-6));
  // exact circle solution at the final time
  double exact = circle_k(1.0, trace.t_final);
  CHECK(last.k_min == doctest::Approx(exact).epsilon(1e-6));
  CHECK(last.k_max == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("evolve stops on the curvature cap") {
  SolverConfig cfg;
  cfg.n = 32;
  cfg.stop_kmax = 2.0;
  CurvatureState s = uniform_state(AngleGrid(32), 1.0);
  FlowTrace trace = evolve(s, euclidean(), cfg);
  CHECK(trace.reason == Termination::kBlowup);
  CHECK(trace.records.back().k_max > 2.0);
  CHECK(trace.t_final < 0.4);
}

TEST_CASE("evolve lands exactly on t_max and snapshot times") {
  SolverConfig cfg;
  cfg.n = 32;
  cfg.t_max = 0.1;
  cfg.snapshot_times = {0.0, 0.05};
  CurvatureState s = uniform_state(AngleGrid(32), 1.0);
  FlowTrace trace = evolve(s, euclidean(), cfg);

  CHECK(trace.reason == Termination::kTimeLimit);
  CHECK(trace.t_final == 0.1);
  REQUIRE(trace.snapshots.size() == 2);
  CHECK(trace.snapshots[0].t == 0.0);
  CHECK(trace.snapshots[1].t == 0.05);
  bool has_snap_record = false;
  for (const FlowRecord& r : trace.records) has_snap_record |= r.t == 0.05;
  CHECK(has_snap_record);
  CHECK(trace.records.back().t == 0.1);
  // circle solution at the snapshot time
  for (double v : trace.snapshots[1].k)
    CHECK(v == doctest::Approx(circle_k(1.0, 0.05)).epsilon(1e-9));
}

TEST_CASE("evolve rejects bad initial data") {
  SolverConfig cfg;
  cfg.n = 32;
  AngleGrid grid(32);
  CurvatureState s = uniform_state(grid, 1.0);
  s.k[5] = 0.0;
  CHECK_THROWS_AS(evolve(s, euclidean(), cfg), std::domain_error);
  s.k[5] = -1.0;
  CHECK_THROWS_AS(evolve(s, euclidean(), cfg), std::domain_error);

  for (int i = 0; i < 32; ++i) s.k[i] = 1.0 / (1.0 + 0.2 * std::cos(grid.theta(i)));
  CHECK_THROWS_AS(evolve(s, euclidean(), cfg), ClosingConditionError);
}

TEST_CASE("evolve reports invariant_violation when the gauge degenerates") {
  // interpolate toward a non-convex profile: a + a'' hits zero near t = 0.11
  std::vector<std::pair<double, GaugeProfile>> knots;
  knots.emplace_back(0.0, GaugeProfile(1.0, {}));
  knots.emplace_back(0.2, GaugeProfile(1.0, {{2, 0.6, 0.0}}));
  PlaneFamily fam = PlaneFamily::tabulated(std::move(knots));

  SolverConfig cfg;
  cfg.n = 32;
  cfg.t_max = 0.2;
  CurvatureState s = uniform_state(AngleGrid(32), 1.0);
  FlowTrace trace = evolve(s, fam, cfg);
  CHECK(trace.reason == Termination::kInvariantViolation);
  CHECK(trace.t_final < 0.15);
}

TEST_CASE("evolved positions follow the pointwise motion law") {
  // dF/dt = -k p(theta) - a^2 k' q(theta) for the marked parametrization;
  // check it at theta_0 = 0 with a central difference of reconstructed
  // positions
  AngleGrid grid(64);
  const int n = 64;
  PlaneFamily fam = PlaneFamily::fixed(GaugeProfile(1.0, {{2, 0.2, 0.0}}));
  FamilySampler sampler(fam, grid);
  SpectralDifferentiator diff(n);
  GaugeSamples g = sampler(0.0);

  FourierSeries h(1.0, {{2, 0.15, 0.0}});
  CurvatureState s;
  s.grid = grid;
  s.k.resize(n);
  for (int i = 0; i < n; ++i) {
    double th = grid.theta(i);
    s.k[i] = g.conv[i] / (h.value(th) + h.second_derivative(th));
  }

  const double dt = 2e-4;
  CurvatureState fwd = s;
  for (int j = 0; j < 2; ++j) fwd = rk4_step(fwd, sampler, diff, dt);
  CurveSnapshot s0 = reconstruct(s, g, diff, kClosingTolFactor);
  CurveSnapshot s2 = reconstruct(fwd, sampler(fwd.t), diff, kClosingTolFactor);

  CurvatureState mid = rk4_step(s, sampler, diff, dt);
  std::vector<double> dk(n);
  diff.derivative(mid.k, dk);

  for (int i : {0, 7, 23, 40}) {
    double th = grid.theta(i);
    Vec2 p = g.a[i] * radial_dir(th) + g.da[i] * angular_dir(th);
    Vec2 q = angular_dir(th) * (1.0 / g.a[i]);
    Vec2 want = -1.0 * mid.k[i] * p - g.a[i] * g.a[i] * dk[i] * q;
    Vec2 got = (s2.points[i] - s0.points[i]) * (1.0 / (2.0 * dt));
    CHECK(std::abs(got.x - want.x) < 5e-4);
    CHECK(std::abs(got.y - want.y) < 5e-4);
  }
}
