#include "minkflow/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace minkflow {

namespace {

// Second-order derivative estimate at t1 from (t0,f0), (t1,f1), (t2,f2) with
// nonuniform spacing.
double centered_fd(double t0, double f0, double t1, double f1, double t2,
                   double f2) {
  double h0 = t1 - t0, h1 = t2 - t1;
  return (h0 * h0 * f2 + (h1 * h1 - h0 * h0) * f1 - h1 * h1 * f0) /
         (h0 * h1 * (h0 + h1));
}

// Skip FD stencils whose spacings are so lopsided that the estimate is noise
// (a snapshot landing right next to a cadence record).
bool stencil_ok(double h0, double h1) {
  if (h0 <= 0.0 || h1 <= 0.0) return false;
  double lo = std::min(h0, h1), hi = std::max(h0, h1);
  return hi / lo <= 50.0;
}

std::string describe_worst(double worst, double t) {
  std::ostringstream os;
  os << "worst " << worst << " at t = " << t;
  return os.str();
}

}  // namespace

CheckReport check_qlength_evolution(const FlowTrace& trace,
                                    const PlaneFamily& family, double tol) {
  const auto& rec = trace.records;
  if (rec.size() < 3)
    throw std::invalid_argument(
        "check_qlength_evolution: need at least 3 records");
  const AngleGrid grid(int(rec.front().k.size()));
  FamilySampler sampler(family, grid);
  GaugeSamples g;

  CheckReport rep;
  rep.name = "qlength_evolution";
  rep.tolerance = tol;
  double worst = 0.0, worst_t = rec.front().t;
  for (size_t i = 1; i + 1 < rec.size(); ++i) {
    double h0 = rec[i].t - rec[i - 1].t, h1 = rec[i + 1].t - rec[i].t;
    if (!stencil_ok(h0, h1)) continue;
    double fd = centered_fd(rec[i - 1].t, rec[i - 1].q_length, rec[i].t,
                            rec[i].q_length, rec[i + 1].t, rec[i + 1].q_length);
    sampler.fill(rec[i].t, g);
    // -int k^2 lambda + int dlog(a)/dt lambda, with k^2 lambda = a(a+a'')k
    double shrink = 0.0, gain = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
      shrink += g.a[j] * g.conv[j] * rec[i].k[j];
      gain += g.dlog_a_dt[j] * g.a[j] * g.conv[j] / rec[i].k[j];
    }
    double rhs = grid.spacing() * (gain - shrink);
    // dL_Q/dt crosses zero where gain and shrink balance (e.g. t = 0 on the
    // exponential-gauge circle), so normalize by the terms, not their
    // difference
    double terms = grid.spacing() * (shrink + std::abs(gain));
    double scale = std::max({std::abs(rhs), std::abs(fd), terms, 1e-300});
    double dev = std::abs(fd - rhs) / scale;
    if (dev > worst) {
      worst = dev;
      worst_t = rec[i].t;
    }
  }
  rep.worst = worst;
  rep.passed = worst <= tol;
  rep.detail = describe_worst(worst, worst_t);
  return rep;
}

CheckReport check_gronwall(const FlowTrace& trace, const PlaneFamily& family,
                           double m, double tol) {
  const auto& rec = trace.records;
  if (rec.empty()) throw std::invalid_argument("check_gronwall: empty trace");
  double sup = family.sup_log_a_rate(trace.t_final);
  if (std::isnan(m)) m = sup;
  if (!std::isfinite(m) || m < sup - 1e-12)
    throw std::invalid_argument(
        "check_gronwall: M must be finite and >= sup dlog(a)/dt = " +
        std::to_string(sup));

  CheckReport rep;
  rep.name = "gronwall";
  rep.tolerance = tol;
  const double l0 = rec.front().q_length;
  const double t0 = rec.front().t;
  double worst = -std::numeric_limits<double>::infinity(), worst_t = t0;
  for (const FlowRecord& r : rec) {
    double bound = std::exp(m * (r.t - t0)) * l0;
    double margin = r.q_length / bound - 1.0;
    if (margin > worst) {
      worst = margin;
      worst_t = r.t;
    }
  }
  rep.worst = worst;
  rep.passed = worst <= tol;
  rep.detail = describe_worst(worst, worst_t);
  return rep;
}

EntropyReport check_entropy(const FlowTrace& trace, const PlaneFamily& family,
                            double tol) {
  if (!family.homothetic_form())
    throw std::invalid_argument(
        "check_entropy: entropy functionals need a homothetic family");
  const auto& rec = trace.records;
  if (rec.size() < 3)
    throw std::invalid_argument("check_entropy: need at least 3 records");

  EntropyReport out;
  out.identity.name = "entropy_identity";
  out.identity.tolerance = tol;
  double worst = 0.0, worst_t = rec.front().t;
  for (size_t i = 1; i + 1 < rec.size(); ++i) {
    double h0 = rec[i].t - rec[i - 1].t, h1 = rec[i + 1].t - rec[i].t;
    if (!stencil_ok(h0, h1)) continue;
    double fd = centered_fd(rec[i - 1].t, rec[i - 1].entropy, rec[i].t,
                            rec[i].entropy, rec[i + 1].t, rec[i + 1].entropy);
    double rhs = rec[i].sq_fun - rec[i].grad_fun;
    // same residual-style normalization as the q-length identity
    double terms = rec[i].sq_fun + rec[i].grad_fun;
    double scale = std::max({std::abs(rhs), std::abs(fd), terms, 1e-300});
    double dev = std::abs(fd - rhs) / scale;
    if (dev > worst) {
      worst = dev;
      worst_t = rec[i].t;
    }
  }
  out.identity.worst = worst;
  out.identity.passed = worst <= tol;
  out.identity.detail = describe_worst(worst, worst_t);

  // lower bound: int w log k = E + I0 log f >= I0 log k_min(0)
  const AngleGrid grid(int(rec.front().k.size()));
  GaugeSamples g0 = family.sample(grid, 0.0);
  double i0 = 0.0;
  for (int j = 0; j < grid.size(); ++j) i0 += g0.a[j] * g0.conv[j];
  i0 *= grid.spacing();
  const double kmin0 = rec.front().k_min;
  const double floor = i0 * std::log(kmin0);
  out.lower_bound.name = "entropy_lower_bound";
  out.lower_bound.tolerance = 1e-6;
  double worst_margin = std::numeric_limits<double>::infinity();
  double margin_t = rec.front().t;
  for (const FlowRecord& r : rec) {
    double logk = r.entropy + i0 * std::log(family.f(r.t));
    double margin = logk - floor;
    if (margin < worst_margin) {
      worst_margin = margin;
      margin_t = r.t;
    }
    double d = r.grad_fun - r.sq_fun;
    if (d > out.empirical_n) {
      out.empirical_n = d;
      out.empirical_n_time = r.t;
    }
  }
  double scale = std::abs(i0) * (1.0 + std::abs(std::log(kmin0)));
  out.lower_bound.worst = worst_margin;
  out.lower_bound.passed = worst_margin >= -1e-6 * scale;
  out.lower_bound.detail = describe_worst(worst_margin, margin_t);
  return out;
}

CheckReport check_median_bound(const FlowTrace& trace,
                               const PlaneFamily& family) {
  const auto& rec = trace.records;
  if (rec.empty())
    throw std::invalid_argument("check_median_bound: empty trace");
  CheckReport rep;
  rep.name = "median_bound";
  rep.tolerance = 1e-12;
  double worst = -std::numeric_limits<double>::infinity(), worst_t = 0.0;
  for (const FlowRecord& r : rec) {
    double margin = r.k_star / r.c_bound - 1.0;
    if (margin > worst) {
      worst = margin;
      worst_t = r.t;
    }
  }
  rep.worst = worst;
  rep.passed = worst <= rep.tolerance;
  rep.detail = describe_worst(worst, worst_t);

  if (family.homothetic_form()) {
    const AngleGrid grid(int(rec.front().k.size()));
    double c0 = median_bound_constant(family.sample(grid, rec.front().t));
    double c1 = median_bound_constant(family.sample(grid, rec.back().t));
    double drift = std::abs(c1 - c0) / c0;
    if (drift > 1e-12) {
      rep.passed = false;
      rep.detail += "; C(t) drift " + std::to_string(drift);
    }
  }
  return rep;
}

CheckReport check_area_law(const FlowTrace& trace, double tol_frac) {
  const auto& rec = trace.records;
  if (rec.empty()) throw std::invalid_argument("check_area_law: empty trace");
  CheckReport rep;
  rep.name = "area_law";
  rep.tolerance = tol_frac * trace.initial_area;
  double worst = 0.0, worst_t = rec.front().t;
  for (const FlowRecord& r : rec) {
    double dev = std::abs(r.area_curve - r.area_analytic);
    if (dev > worst) {
      worst = dev;
      worst_t = r.t;
    }
  }
  rep.worst = worst;
  rep.passed = worst <= rep.tolerance;
  rep.detail = describe_worst(worst, worst_t);
  return rep;
}

CheckReport check_isoperimetric(const FlowTrace& trace,
                                const PlaneFamily& family, double tol) {
  const auto& rec = trace.records;
  if (rec.size() < 3)
    throw std::invalid_argument("check_isoperimetric: need at least 3 records");
  const AngleGrid grid(int(rec.front().k.size()));
  FamilySampler sampler(family, grid);
  GaugeSamples g;

  CheckReport rep;
  rep.name = "isoperimetric_evolution";
  rep.tolerance = tol;
  double worst = 0.0, worst_t = rec.front().t;
  for (size_t i = 1; i + 1 < rec.size(); ++i) {
    double h0 = rec[i].t - rec[i - 1].t, h1 = rec[i + 1].t - rec[i].t;
    if (!stencil_ok(h0, h1)) continue;
    double fd = centered_fd(rec[i - 1].t, rec[i - 1].iso_ratio, rec[i].t,
                            rec[i].iso_ratio, rec[i + 1].t, rec[i + 1].iso_ratio);
    sampler.fill(rec[i].t, g);
    double ksq = 0.0, gain = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
      ksq += g.a[j] * g.conv[j] * rec[i].k[j];
      gain += g.dlog_a_dt[j] * g.a[j] * g.conv[j] / rec[i].k[j];
    }
    ksq *= grid.spacing();
    gain *= grid.spacing();
    double ball = ball_area(g);
    double l = rec[i].q_length, a = rec[i].area_curve;
    double rhs = -(2.0 * l / a) * (ksq - ball * l / a) + (2.0 * l / a) * gain;
    // the ratio is stationary on circles, so floor the denominator by the
    // magnitude of the individual terms
    double term_scale = (2.0 * l / a) * (ksq + std::abs(gain)) +
                        2.0 * ball * l * l / (a * a);
    double scale = std::max({std::abs(rhs), std::abs(fd), 1e-6 * term_scale});
    double dev = std::abs(fd - rhs) / scale;
    if (dev > worst) {
      worst = dev;
      worst_t = rec[i].t;
    }
  }
  rep.worst = worst;
  rep.passed = worst <= tol;
  rep.detail = describe_worst(worst, worst_t);
  return rep;
}

std::vector<CheckReport> run_all_checks(const FlowTrace& trace,
                                        const PlaneFamily& family) {
  std::vector<CheckReport> out;
  out.push_back(check_qlength_evolution(trace, family));
  out.push_back(check_gronwall(trace, family));
  if (family.homothetic_form()) {
    EntropyReport e = check_entropy(trace, family);
    out.push_back(e.identity);
    out.push_back(e.lower_bound);
  }
  out.push_back(check_median_bound(trace, family));
  out.push_back(check_area_law(trace));
  out.push_back(check_isoperimetric(trace, family));
  return out;
}

}  // namespace minkflow
