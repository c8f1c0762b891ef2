#include "minkflow/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace minkflow {

AngleGrid::AngleGrid(int n) : n_(n), dtheta_(kTwoPi / n) {
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("AngleGrid: n must be even and >= 8, got " +
                                std::to_string(n));
}

std::vector<double> AngleGrid::thetas() const {
  std::vector<double> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = theta(i);
  return out;
}

FourierSeries::FourierSeries(double constant, std::vector<Term> terms)
    : constant_(constant), terms_(std::move(terms)) {
  for (const Term& t : terms_)
    if (t.order < 1)
      throw std::invalid_argument("FourierSeries: term order must be >= 1");
}

int FourierSeries::max_order() const {
  int m = 0;
  for (const Term& t : terms_) m = std::max(m, t.order);
  return m;
}

double FourierSeries::value(double theta) const {
  double v = constant_;
  for (const Term& t : terms_)
    v += t.cos_coeff * std::cos(t.order * theta) +
         t.sin_coeff * std::sin(t.order * theta);
  return v;
}

double FourierSeries::derivative(double theta) const {
  double v = 0.0;
  for (const Term& t : terms_)
    v += t.order * (t.sin_coeff * std::cos(t.order * theta) -
                    t.cos_coeff * std::sin(t.order * theta));
  return v;
}

double FourierSeries::second_derivative(double theta) const {
  double v = 0.0;
  for (const Term& t : terms_)
    v -= double(t.order) * t.order *
         (t.cos_coeff * std::cos(t.order * theta) +
          t.sin_coeff * std::sin(t.order * theta));
  return v;
}

GaugeProfile::GaugeProfile(double c0, std::vector<FourierSeries::Term> even_terms)
    : series_(c0, std::move(even_terms)) {
  if (c0 <= 0.0)
    throw std::invalid_argument("GaugeProfile: constant term must be positive");
  for (const FourierSeries::Term& t : series_.terms())
    if (t.order % 2 != 0)
      throw std::invalid_argument(
          "GaugeProfile: only even harmonics keep the profile pi-periodic, "
          "got order " +
          std::to_string(t.order));
}

}  // namespace minkflow
