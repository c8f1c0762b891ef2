#pragma once

#include <memory>
#include <span>

namespace minkflow {

// Trigonometric-interpolation derivatives of real periodic samples on a
// uniform grid, plus the spectral antiderivative. Backed by FFTW; instances
// own their plans and scratch buffers, so each worker should hold its own.
class SpectralDifferentiator {
 public:
  explicit SpectralDifferentiator(int n);
  ~SpectralDifferentiator();

  SpectralDifferentiator(SpectralDifferentiator&&) noexcept;
  SpectralDifferentiator& operator=(SpectralDifferentiator&&) noexcept;
  SpectralDifferentiator(const SpectralDifferentiator&) = delete;
  SpectralDifferentiator& operator=(const SpectralDifferentiator&) = delete;

  int size() const;

  // d/dtheta; the Nyquist mode is dropped (odd derivative of the real
  // cosine mode has no grid representation).
  void derivative(std::span<const double> in, std::span<double> out);

  // d^2/dtheta^2; the Nyquist mode is kept with factor -(n/2)^2.
  void second_derivative(std::span<const double> in, std::span<double> out);

  // Both derivatives from a single forward transform.
  void derivatives(std::span<const double> in, std::span<double> d1,
                   std::span<double> d2);

  // out[j] = integral of the trigonometric interpolant from theta_0 to
  // theta_j; the mean of `in` contributes a linear (non-periodic) term.
  // out[0] == 0.
  void antiderivative(std::span<const double> in, std::span<double> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace minkflow
