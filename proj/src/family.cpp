#include "minkflow/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "minkflow/errors.hpp"

namespace minkflow {

FSpec FSpec::linear(double c) {
  if (!(c >= 0.0))
    throw std::invalid_argument("FSpec: linear rate must be >= 0");
  return {Kind::Linear, c};
}

FSpec FSpec::exponential(double c) {
  if (!(c >= 0.0))
    throw std::invalid_argument("FSpec: exponential rate must be >= 0");
  return {Kind::Exponential, c};
}

double FSpec::f(double t) const {
  switch (kind) {
    case Kind::Constant: return 1.0;
    case Kind::Linear: return 1.0 + c * t;
    case Kind::Exponential: return std::exp(c * t);
  }
  return 1.0;
}

double FSpec::fdot(double t) const {
  switch (kind) {
    case Kind::Constant: return 0.0;
    case Kind::Linear: return c;
    case Kind::Exponential: return c * std::exp(c * t);
  }
  return 0.0;
}

double FSpec::log_rate(double t) const { return fdot(t) / f(t); }

double FSpec::sup_log_rate(double /*t_end*/) const {
  // fdot/f is c at t = 0 and nonincreasing (linear) or constant, so the sup
  // over any [0, t_end] is c.
  return kind == Kind::Constant ? 0.0 : c;
}

std::string FSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Constant: return "constant";
    case Kind::Linear: os << "linear:" << c; break;
    case Kind::Exponential: os << "exponential:" << c; break;
  }
  return os.str();
}

PlaneFamily PlaneFamily::fixed(GaugeProfile profile) {
  return PlaneFamily(Fixed{std::move(profile)});
}

PlaneFamily PlaneFamily::homothetic(GaugeProfile profile, FSpec fspec) {
  return PlaneFamily(Homothetic{std::move(profile), fspec});
}

PlaneFamily PlaneFamily::tabulated(
    std::vector<std::pair<double, GaugeProfile>> knots) {
  if (knots.empty())
    throw std::invalid_argument("PlaneFamily: tabulated family needs knots");
  for (size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i - 1].first < knots[i].first))
      throw std::invalid_argument(
          "PlaneFamily: tabulated knot times must be strictly increasing");
  return PlaneFamily(Tabulated{std::move(knots)});
}

GaugeSamples PlaneFamily::sample(const AngleGrid& grid, double t) const {
  return FamilySampler(*this, grid)(t);
}

bool PlaneFamily::homothetic_form() const {
  return !std::holds_alternative<Tabulated>(variant_);
}

const GaugeProfile& PlaneFamily::base() const {
  if (auto* p = std::get_if<Fixed>(&variant_)) return p->profile;
  if (auto* p = std::get_if<Homothetic>(&variant_)) return p->profile;
  throw std::logic_error("PlaneFamily: tabulated family has no base profile");
}

double PlaneFamily::f(double t) const {
  if (std::holds_alternative<Fixed>(variant_)) return 1.0;
  if (auto* p = std::get_if<Homothetic>(&variant_)) return p->fspec.f(t);
  throw std::logic_error("PlaneFamily: tabulated family has no scalar f(t)");
}

double PlaneFamily::fdot(double t) const {
  if (std::holds_alternative<Fixed>(variant_)) return 0.0;
  if (auto* p = std::get_if<Homothetic>(&variant_)) return p->fspec.fdot(t);
  throw std::logic_error("PlaneFamily: tabulated family has no scalar f(t)");
}

std::string PlaneFamily::describe() const {
  if (std::holds_alternative<Fixed>(variant_)) return "fixed";
  if (auto* p = std::get_if<Homothetic>(&variant_))
    return "homothetic " + p->fspec.describe();
  return "tabulated";
}

double PlaneFamily::sup_log_a_rate(double t_end) const {
  if (std::holds_alternative<Fixed>(variant_)) return 0.0;
  if (auto* p = std::get_if<Homothetic>(&variant_))
    return p->fspec.sup_log_rate(t_end);
  // Tabulated: a is piecewise linear in t, so dlog(a)/dt is largest at the
  // start of a segment; probe on a fixed grid.
  const auto& knots = std::get<Tabulated>(variant_).knots;
  const AngleGrid probe(256);
  double sup = 0.0;
  for (size_t j = 0; j + 1 < knots.size(); ++j) {
    if (knots[j].first >= t_end) break;
    double dt = knots[j + 1].first - knots[j].first;
    for (int i = 0; i < probe.size(); ++i) {
      double th = probe.theta(i);
      double a0 = knots[j].second.value(th);
      double a1 = knots[j + 1].second.value(th);
      sup = std::max(sup, (a1 - a0) / (dt * std::min(a0, a1)));
    }
  }
  return sup;
}

FamilySampler::FamilySampler(const PlaneFamily& family, const AngleGrid& grid)
    : family_(&family), grid_(grid) {
  auto sample_profile = [&](const GaugeProfile& p, double t) {
    Knot k;
    k.t = t;
    int n = grid_.size();
    k.a.resize(n);
    k.da.resize(n);
    k.dda.resize(n);
    for (int i = 0; i < n; ++i) {
      double th = grid_.theta(i);
      k.a[i] = p.value(th);
      k.da[i] = p.derivative(th);
      k.dda[i] = p.second_derivative(th);
    }
    return k;
  };
  if (auto* p = std::get_if<PlaneFamily::Tabulated>(&family.variant_)) {
    for (const auto& [t, profile] : p->knots)
      knots_.push_back(sample_profile(profile, t));
  } else {
    knots_.push_back(sample_profile(family.base(), 0.0));
  }
}

void FamilySampler::fill(double t, GaugeSamples& out) const {
  const int n = grid_.size();
  out.grid = grid_;
  out.t = t;
  out.a.resize(n);
  out.da.resize(n);
  out.dda.resize(n);
  out.conv.resize(n);
  out.dlog_a_dt.resize(n);
  out.dlog_conv_dt.resize(n);

  if (family_->homothetic_form()) {
    const Knot& base = knots_[0];
    const double f = family_->f(t);
    const double rate = family_->fdot(t) / f;
    for (int i = 0; i < n; ++i) {
      out.a[i] = f * base.a[i];
      out.da[i] = f * base.da[i];
      out.dda[i] = f * base.dda[i];
      out.conv[i] = f * (base.a[i] + base.dda[i]);
      out.dlog_a_dt[i] = rate;
      out.dlog_conv_dt[i] = rate;
    }
  } else {
    // piecewise-linear in t, constant beyond the knot range; at a knot the
    // time derivative is taken from the right so runs starting on a knot see
    // the upcoming segment's rate
    size_t hi = 0;
    while (hi < knots_.size() && knots_[hi].t <= t) ++hi;
    if (hi == 0 || hi == knots_.size()) {
      const Knot& k = knots_[hi == 0 ? 0 : knots_.size() - 1];
      for (int i = 0; i < n; ++i) {
        out.a[i] = k.a[i];
        out.da[i] = k.da[i];
        out.dda[i] = k.dda[i];
        out.conv[i] = k.a[i] + k.dda[i];
        out.dlog_a_dt[i] = 0.0;
        out.dlog_conv_dt[i] = 0.0;
      }
    } else {
      const Knot& k0 = knots_[hi - 1];
      const Knot& k1 = knots_[hi];
      const double span = k1.t - k0.t;
      const double w = (t - k0.t) / span;
      for (int i = 0; i < n; ++i) {
        out.a[i] = k0.a[i] + w * (k1.a[i] - k0.a[i]);
        out.da[i] = k0.da[i] + w * (k1.da[i] - k0.da[i]);
        out.dda[i] = k0.dda[i] + w * (k1.dda[i] - k0.dda[i]);
        out.conv[i] = out.a[i] + out.dda[i];
        double adot = (k1.a[i] - k0.a[i]) / span;
        double cdot = (k1.a[i] + k1.dda[i] - k0.a[i] - k0.dda[i]) / span;
        out.dlog_a_dt[i] = adot / out.a[i];
        out.dlog_conv_dt[i] = cdot / out.conv[i];
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    if (!(out.a[i] > 0.0))
      throw ConvexityError("gauge radial profile lost positivity at theta = " +
                           std::to_string(grid_.theta(i)) +
                           ", t = " + std::to_string(t));
    if (!(out.conv[i] >= kConvexityEps))
      throw ConvexityError("gauge lost strict convexity (a + a'' = " +
                           std::to_string(out.conv[i]) + " at theta = " +
                           std::to_string(grid_.theta(i)) +
                           ", t = " + std::to_string(t) + ")");
  }
}

GaugeSamples FamilySampler::operator()(double t) const {
  GaugeSamples g;
  fill(t, g);
  return g;
}

BallBoundary unit_ball_boundary(const GaugeSamples& g) {
  const int n = g.grid.size();
  BallBoundary b;
  b.p.resize(n);
  b.dp.resize(n);
  for (int i = 0; i < n; ++i) {
    double th = g.grid.theta(i);
    b.p[i] = g.a[i] * radial_dir(th) + g.da[i] * angular_dir(th);
    b.dp[i] = g.conv[i] * angular_dir(th);
  }
  return b;
}

std::vector<Vec2> dual_boundary(const GaugeSamples& g) {
  const int n = g.grid.size();
  std::vector<Vec2> q(n);
  for (int i = 0; i < n; ++i)
    q[i] = angular_dir(g.grid.theta(i)) * (1.0 / g.a[i]);
  return q;
}

double ball_area(const GaugeSamples& g) {
  double s = 0.0;
  for (size_t i = 0; i < g.a.size(); ++i) s += g.a[i] * g.conv[i];
  return 0.5 * g.grid.spacing() * s;
}

double median_bound_constant(const GaugeSamples& g) {
  double max_inv_a = 0.0, max_bracket = 0.0;
  for (size_t i = 0; i < g.a.size(); ++i) {
    max_inv_a = std::max(max_inv_a, 1.0 / g.a[i]);
    max_bracket = std::max(max_bracket, g.a[i] * g.conv[i]);
  }
  return max_inv_a * max_inv_a * max_bracket;
}

}  // namespace minkflow
