#include "minkflow/spectral.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <string>

#include "minkflow/geometry.hpp"

namespace minkflow {

namespace {

// FFTW plan creation/destruction is not thread-safe (execution is).
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct SpectralDifferentiator::Impl {
  int n;
  int nc;  // n/2 + 1 complex modes
  double* real;
  double* real2;
  fftw_complex* spec;
  fftw_complex* spec2;
  fftw_plan fwd;
  fftw_plan bwd;
  fftw_plan bwd2;

  explicit Impl(int n_in) : n(n_in), nc(n_in / 2 + 1) {
    real = fftw_alloc_real(n);
    real2 = fftw_alloc_real(n);
    spec = fftw_alloc_complex(nc);
    spec2 = fftw_alloc_complex(nc);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    bwd2 = fftw_plan_dft_c2r_1d(n, spec2, real2, FFTW_ESTIMATE);
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_destroy_plan(bwd2);
    fftw_free(real);
    fftw_free(real2);
    fftw_free(spec);
    fftw_free(spec2);
  }

  void load(std::span<const double> in) {
    for (int i = 0; i < n; ++i) real[i] = in[i];
    fftw_execute(fwd);
  }
};

SpectralDifferentiator::SpectralDifferentiator(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument(
        "SpectralDifferentiator: n must be even and >= 2, got " +
        std::to_string(n));
  impl_ = std::make_unique<Impl>(n);
}

SpectralDifferentiator::~SpectralDifferentiator() = default;
SpectralDifferentiator::SpectralDifferentiator(SpectralDifferentiator&&) noexcept =
    default;
SpectralDifferentiator& SpectralDifferentiator::operator=(
    SpectralDifferentiator&&) noexcept = default;

int SpectralDifferentiator::size() const { return impl_->n; }

void SpectralDifferentiator::derivative(std::span<const double> in,
                                        std::span<double> out) {
  Impl& s = *impl_;
  const double ninv = 1.0 / s.n;
  s.load(in);
  for (int m = 0; m < s.nc; ++m) {
    double re = s.spec[m][0], im = s.spec[m][1];
    s.spec[m][0] = -ninv * m * im;
    s.spec[m][1] = ninv * m * re;
  }
  // the Nyquist cosine has no odd-derivative representation on the grid
  s.spec[s.nc - 1][0] = 0.0;
  s.spec[s.nc - 1][1] = 0.0;
  fftw_execute(s.bwd);
  for (int i = 0; i < s.n; ++i) out[i] = s.real[i];
}

void SpectralDifferentiator::second_derivative(std::span<const double> in,
                                               std::span<double> out) {
  Impl& s = *impl_;
  const double ninv = 1.0 / s.n;
  s.load(in);
  for (int m = 0; m < s.nc; ++m) {
    double w = -ninv * double(m) * m;
    s.spec[m][0] *= w;
    s.spec[m][1] *= w;
  }
  fftw_execute(s.bwd);
  for (int i = 0; i < s.n; ++i) out[i] = s.real[i];
}

void SpectralDifferentiator::derivatives(std::span<const double> in,
                                         std::span<double> d1,
                                         std::span<double> d2) {
  Impl& s = *impl_;
  const double ninv = 1.0 / s.n;
  s.load(in);
  for (int m = 0; m < s.nc; ++m) {
    double re = s.spec[m][0], im = s.spec[m][1];
    double w = -ninv * double(m) * m;
    s.spec2[m][0] = w * re;
    s.spec2[m][1] = w * im;
    s.spec[m][0] = -ninv * m * im;
    s.spec[m][1] = ninv * m * re;
  }
  s.spec[s.nc - 1][0] = 0.0;
  s.spec[s.nc - 1][1] = 0.0;
  fftw_execute(s.bwd);
  fftw_execute(s.bwd2);
  for (int i = 0; i < s.n; ++i) {
    d1[i] = s.real[i];
    d2[i] = s.real2[i];
  }
}

void SpectralDifferentiator::antiderivative(std::span<const double> in,
                                            std::span<double> out) {
  Impl& s = *impl_;
  const double ninv = 1.0 / s.n;
  s.load(in);
  const double mean = s.spec[0][0] * ninv;
  s.spec[0][0] = 0.0;
  s.spec[0][1] = 0.0;
  for (int m = 1; m < s.nc; ++m) {
    double re = s.spec[m][0], im = s.spec[m][1];
    s.spec[m][0] = ninv * im / m;
    s.spec[m][1] = -ninv * re / m;
  }
  // the Nyquist antiderivative ~ sin(n/2 theta) vanishes at all grid points
  s.spec[s.nc - 1][0] = 0.0;
  s.spec[s.nc - 1][1] = 0.0;
  fftw_execute(s.bwd);
  const double at_zero = s.real[0];
  const double dtheta = kTwoPi / s.n;
  for (int i = 0; i < s.n; ++i)
    out[i] = s.real[i] - at_zero + mean * (dtheta * i);
}

}  // namespace minkflow
