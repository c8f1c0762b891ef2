#include "minkflow/state.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace minkflow {

double q_length(const CurvatureState& state, const GaugeSamples& g) {
  if (state.grid != g.grid || int(state.k.size()) != state.grid.size())
    throw std::invalid_argument("q_length: state and gauge grids differ");
  double s = 0.0;
  for (size_t i = 0; i < state.k.size(); ++i) {
    if (!(state.k[i] > 0.0))
      throw std::domain_error("q_length: curvature must be positive");
    s += g.a[i] * g.conv[i] / state.k[i];
  }
  return state.grid.spacing() * s;
}

double curve_area(const CurveSnapshot& snap) {
  double s = 0.0;
  for (size_t i = 0; i < snap.points.size(); ++i)
    s += wedge(snap.points[i], snap.tangent[i]);
  return 0.5 * snap.grid.spacing() * s;
}

// Max over the n cyclic windows of n/2 + 1 consecutive samples of the window
// minimum. Sliding minimum with a monotone deque over one wrapped pass.
double median_curvature(const std::vector<double>& k) {
  const int n = int(k.size());
  if (n == 0) throw std::invalid_argument("median_curvature: empty input");
  const int w = n / 2 + 1;
  if (w >= n) {
    double m = k[0];
    for (double v : k) m = std::min(m, v);
    return m;
  }
  std::deque<int> idx;  // indices into the virtual doubled array, minima front
  auto at = [&](int j) { return k[j % n]; };
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n + w - 1; ++j) {
    while (!idx.empty() && at(idx.back()) >= at(j)) idx.pop_back();
    idx.push_back(j);
    if (idx.front() <= j - w) idx.pop_front();
    if (j >= w - 1) best = std::max(best, at(idx.front()));
  }
  return best;
}

}  // namespace minkflow
