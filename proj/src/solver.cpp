#include "minkflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "minkflow/errors.hpp"
#include "minkflow/state.hpp"

namespace minkflow {

void SolverConfig::validate() const {
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("solver: n must be even and >= 8");
  if (!(cfl > 0.0 && cfl <= 0.5))
    throw std::invalid_argument("solver: cfl must lie in (0, 0.5]");
  if (!(stop_area_frac > 0.0 && stop_area_frac < 1.0))
    throw std::invalid_argument("solver: stop_area_frac must lie in (0, 1)");
  if (!(stop_kmax > 0.0))
    throw std::invalid_argument("solver: stop_kmax must be positive");
  if (!(t_max > 0.0))
    throw std::invalid_argument("solver: t_max must be positive");
  if (record_every < 1)
    throw std::invalid_argument("solver: record_every must be >= 1");
  for (double s : snapshot_times)
    if (!(s >= 0.0) || std::isinf(s))
      throw std::invalid_argument("solver: snapshot times must be finite, >= 0");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kAreaFloor: return "area_floor";
    case Termination::kBlowup: return "k_blowup";
    case Termination::kTimeLimit: return "t_max";
    case Termination::kInvariantViolation: return "invariant_violation";
  }
  return "unknown";
}

std::array<double, 2> closing_residual(const CurvatureState& state,
                                       const GaugeSamples& g) {
  if (state.grid != g.grid)
    throw std::invalid_argument("closing_residual: grids differ");
  double rs = 0.0, rc = 0.0;
  for (size_t i = 0; i < state.k.size(); ++i) {
    double th = state.grid.theta(i);
    double w = g.conv[i] / state.k[i];
    rs += w * std::sin(th);
    rc += w * std::cos(th);
  }
  double dth = state.grid.spacing();
  return {dth * rs, dth * rc};
}

namespace {

struct RhsWorkspace {
  std::vector<double> dk, ddk;

  explicit RhsWorkspace(int n) : dk(n), ddk(n) {}

  void eval(std::span<const double> k, const GaugeSamples& g,
            SpectralDifferentiator& diff, std::span<double> out) {
    diff.derivatives(k, dk, ddk);
    const size_t n = k.size();
    for (size_t i = 0; i < n; ++i) {
      double k2 = k[i] * k[i];
      out[i] = (g.a[i] / g.conv[i]) * k2 * ddk[i] +
               2.0 * (g.da[i] / g.conv[i]) * k2 * dk[i] + k2 * k[i] +
               g.dlog_conv_dt[i] * k[i];
    }
  }
};

}  // namespace

std::vector<double> evolution_rhs(const CurvatureState& state,
                                  const GaugeSamples& g,
                                  SpectralDifferentiator& diff) {
  if (state.grid != g.grid)
    throw std::invalid_argument("evolution_rhs: grids differ");
  const int n = state.grid.size();
  std::vector<double> out(n);
  RhsWorkspace ws(n);
  ws.eval(state.k, g, diff, out);
  return out;
}

double adaptive_dt(const CurvatureState& state, const GaugeSamples& g,
                   double cfl) {
  double coef = 0.0;
  for (size_t i = 0; i < state.k.size(); ++i)
    coef = std::max(coef, state.k[i] * state.k[i] * g.a[i] / g.conv[i]);
  double dth = state.grid.spacing();
  return cfl * dth * dth / coef;
}

CurvatureState rk4_step(const CurvatureState& state,
                        const FamilySampler& sampler,
                        SpectralDifferentiator& diff, double dt) {
  const int n = state.grid.size();
  if (sampler.grid() != state.grid)
    throw std::invalid_argument("rk4_step: sampler grid differs from state");

  GaugeSamples ga = sampler(state.t);
  GaugeSamples gm = sampler(state.t + 0.5 * dt);
  GaugeSamples gb = sampler(state.t + dt);

  RhsWorkspace ws(n);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), y(n);

  ws.eval(state.k, ga, diff, k1);
  for (int i = 0; i < n; ++i) y[i] = state.k[i] + 0.5 * dt * k1[i];
  ws.eval(y, gm, diff, k2);
  for (int i = 0; i < n; ++i) y[i] = state.k[i] + 0.5 * dt * k2[i];
  ws.eval(y, gm, diff, k3);
  for (int i = 0; i < n; ++i) y[i] = state.k[i] + dt * k3[i];
  ws.eval(y, gb, diff, k4);

  CurvatureState out;
  out.grid = state.grid;
  out.t = state.t + dt;
  out.k.resize(n);
  for (int i = 0; i < n; ++i)
    out.k[i] =
        state.k[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

  // advance the theta = 0 marker integrals by the trapezoid rule; ws.dk still
  // holds the stage-4 derivative, so recompute at the endpoints
  std::vector<double>& dk = ws.dk;
  diff.derivative(state.k, dk);
  double r1_old = ga.a[0] * state.k[0];
  double r2_old = ga.a[0] * dk[0] + ga.da[0] * state.k[0];
  diff.derivative(out.k, dk);
  double r1_new = gb.a[0] * out.k[0];
  double r2_new = gb.a[0] * dk[0] + gb.da[0] * out.k[0];
  out.translation_acc = {
      state.translation_acc[0] + 0.5 * dt * (r1_old + r1_new),
      state.translation_acc[1] + 0.5 * dt * (r2_old + r2_new)};
  return out;
}

CurveSnapshot reconstruct(const CurvatureState& state, const GaugeSamples& g,
                          SpectralDifferentiator& diff, double tol_factor) {
  if (state.grid != g.grid)
    throw std::invalid_argument("reconstruct: grids differ");
  const int n = state.grid.size();
  CurveSnapshot snap;
  snap.grid = state.grid;
  snap.t = state.t;
  snap.points.resize(n);
  snap.tangent.resize(n);
  snap.lambda.resize(n);
  snap.k = state.k;

  std::vector<double> gx(n), gy(n), ix(n), iy(n);
  double max_conv = 0.0, min_k = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double th = state.grid.theta(i);
    double w = g.conv[i] / state.k[i];  // = h + h'' of the instantaneous curve
    gx[i] = -w * std::sin(th);
    gy[i] = w * std::cos(th);
    snap.lambda[i] = g.a[i] * w;
    snap.tangent[i] = w * angular_dir(th);
    max_conv = std::max(max_conv, g.conv[i]);
    min_k = std::min(min_k, state.k[i]);
  }
  diff.antiderivative(gx, ix);
  diff.antiderivative(gy, iy);
  for (int i = 0; i < n; ++i)
    snap.points[i] = {ix[i] - state.translation_acc[0],
                      iy[i] - state.translation_acc[1]};

  double dth = state.grid.spacing();
  double rs = 0.0, rc = 0.0;
  for (int i = 0; i < n; ++i) {
    rs -= gx[i];  // gx = -(conv/k) sin
    rc += gy[i];
  }
  snap.closing_residual = {dth * rs, dth * rc};
  double tol = tol_factor * max_conv / min_k;
  snap.closed = std::abs(snap.closing_residual[0]) <= tol &&
                std::abs(snap.closing_residual[1]) <= tol;
  return snap;
}

namespace {

bool state_admissible(const std::vector<double>& k, double floor) {
  for (double v : k)
    if (!std::isfinite(v) || !(v > floor)) return false;
  return true;
}

}  // namespace

FlowTrace evolve(const CurvatureState& initial, const PlaneFamily& family,
                 const SolverConfig& config) {
  config.validate();
  const AngleGrid grid = initial.grid;
  const int n = grid.size();
  if (int(initial.k.size()) != n)
    throw std::invalid_argument("evolve: initial k size differs from grid");
  if (!state_admissible(initial.k, kMinInitialK))
    throw std::domain_error(
        "evolve: initial curvature must be finite with min k >= 1e-6");

  FamilySampler sampler(family, grid);
  SpectralDifferentiator diff(n);
  const GaugeSamples g0 = sampler(0.0);  // f(0) = 1, so g0 carries a0
  const bool homothetic = family.homothetic_form();

  CurvatureState state = initial;
  GaugeSamples g = sampler(state.t);

  CurveSnapshot snap = reconstruct(state, g, diff, kClosingTolFactor);
  if (!snap.closed)
    throw ClosingConditionError(
        "initial curvature violates the closing conditions (residual " +
            std::to_string(snap.closing_residual[0]) + ", " +
            std::to_string(snap.closing_residual[1]) + ")",
        snap.closing_residual, kClosingTolFactor);

  FlowTrace trace;
  trace.initial_area = curve_area(snap);
  const double area_floor = config.stop_area_frac * trace.initial_area;

  // a0-weighted arrays for the homothetic entropy functionals
  std::vector<double> w0(n), a0k(n), da0k(n);
  for (int i = 0; i < n; ++i) w0[i] = g0.a[i] * g0.conv[i];

  double ball_acc = 0.0;  // int_0^t ball_area dt, trapezoid in time
  double ball_prev = ball_area(g);

  auto make_record = [&](const CurveSnapshot& sn, const GaugeSamples& gt,
                         double dt_used) {
    FlowRecord r;
    r.t = state.t;
    r.dt = dt_used;
    r.area_curve = curve_area(sn);
    r.area_analytic = trace.initial_area - 2.0 * ball_acc;
    double lq = 0.0;
    for (int i = 0; i < n; ++i) lq += sn.lambda[i];
    r.q_length = grid.spacing() * lq;
    r.iso_ratio = r.q_length * r.q_length / r.area_curve;
    r.k_min = *std::min_element(state.k.begin(), state.k.end());
    r.k_max = *std::max_element(state.k.begin(), state.k.end());
    r.k_star = median_curvature(state.k);
    r.c_bound = median_bound_constant(gt) * r.q_length / r.area_curve;
    if (homothetic) {
      double f = family.f(state.t);
      double e = 0.0, sq = 0.0, gr = 0.0;
      for (int i = 0; i < n; ++i) {
        e += w0[i] * std::log(state.k[i] / f);
        a0k[i] = g0.a[i] * state.k[i];
        sq += a0k[i] * a0k[i];
      }
      diff.derivative(a0k, da0k);
      for (int i = 0; i < n; ++i) gr += da0k[i] * da0k[i];
      r.entropy = grid.spacing() * e;
      r.sq_fun = grid.spacing() * sq;
      r.grad_fun = grid.spacing() * gr;
    } else {
      r.entropy = r.sq_fun = r.grad_fun =
          std::numeric_limits<double>::quiet_NaN();
    }
    r.closing_residual = sn.closing_residual;
    r.k = state.k;
    trace.records.push_back(std::move(r));
  };

  // snapshot schedule: sorted, deduplicated, the past dropped
  std::vector<double> snaps = config.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end(),
                          [](double a, double b) { return b - a < 1e-12; }),
              snaps.end());
  size_t snap_idx = 0;
  while (snap_idx < snaps.size() && snaps[snap_idx] < state.t - 1e-12)
    ++snap_idx;

  make_record(snap, g, 0.0);
  if (snap_idx < snaps.size() && snaps[snap_idx] <= state.t + 1e-12) {
    trace.snapshots.push_back(snap);
    ++snap_idx;
  }

  long steps = 0;
  // compensated accumulation of t: the landing cap dt = t_max - t feeds the
  // accumulated rounding of thousands of t += dt back into the integrated
  // span, which shows up as O(k^2 * drift) solution error on fine grids
  double t_carry = 0.0;
  for (;;) {
    double dt = adaptive_dt(state, g, config.cfl);
    bool at_snap = false, at_tmax = false;
    double target = config.t_max;
    if (snap_idx < snaps.size()) target = std::min(target, snaps[snap_idx]);
    double remain = (target - state.t) - t_carry;
    if (dt >= remain) {
      dt = remain;
      at_snap = snap_idx < snaps.size() && target == snaps[snap_idx];
      at_tmax = target == config.t_max;
    }
    if (dt < kMinDt) {
      if (at_snap) {
        // the snapshot time coincides with the current step boundary
        trace.snapshots.push_back(snap);
        ++snap_idx;
        if (!at_tmax) continue;
      }
      if (trace.records.back().t < state.t) make_record(snap, g, trace.dt_last);
      trace.reason = at_tmax ? Termination::kTimeLimit : Termination::kBlowup;
      break;
    }

    CurvatureState next;
    GaugeSamples gn;
    try {
      next = rk4_step(state, sampler, diff, dt);
      if (at_snap || at_tmax) {
        next.t = target;  // dt was the exact remainder, so this is the truth
        t_carry = 0.0;
      } else {
        double y = dt + t_carry;
        next.t = state.t + y;
        t_carry = y - (next.t - state.t);
      }
      sampler.fill(next.t, gn);
    } catch (const ConvexityError&) {
      trace.reason = Termination::kInvariantViolation;
      break;
    }
    if (!state_admissible(next.k, 0.0)) {
      trace.reason = Termination::kInvariantViolation;
      break;
    }
    state = std::move(next);
    g = std::move(gn);
    ++steps;
    trace.dt_last = dt;

    double ball_now = ball_area(g);
    ball_acc += 0.5 * dt * (ball_prev + ball_now);
    ball_prev = ball_now;

    snap = reconstruct(state, g, diff, kClosingTolFactor);
    if (!snap.closed) {
      trace.reason = Termination::kInvariantViolation;
      break;
    }

    double area = curve_area(snap);
    double kmax = *std::max_element(state.k.begin(), state.k.end());
    bool terminal = false;
    if (kmax > config.stop_kmax) {
      trace.reason = Termination::kBlowup;
      terminal = true;
    } else if (area < area_floor) {
      trace.reason = Termination::kAreaFloor;
      terminal = true;
    } else if (at_tmax) {
      trace.reason = Termination::kTimeLimit;
      terminal = true;
    }

    if (terminal || at_snap || steps % config.record_every == 0)
      make_record(snap, g, dt);
    if (at_snap) {
      trace.snapshots.push_back(snap);
      ++snap_idx;
    }
    if (terminal) break;
  }

  trace.t_final = trace.records.back().t;
  return trace;
}

}  // namespace minkflow
