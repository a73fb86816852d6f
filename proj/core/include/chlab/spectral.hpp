#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace chlab {

using cplx = std::complex<double>;

/// Real-to-complex FFT of fixed length, owning its FFTW plans.
///
/// Plans are created once (plan creation is serialized internally); execute
/// calls are safe from several threads since they use the new-array interface
/// on unaligned plans.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;

  std::size_t size() const noexcept { return n_; }
  std::size_t spectrum_size() const noexcept { return n_ / 2 + 1; }

  /// Unnormalized forward transform; `out` has spectrum_size() entries.
  void forward(std::span<const double> in, std::span<cplx> out) const;
  /// Inverse transform including the 1/n factor. `in` is left untouched.
  void inverse(std::span<const cplx> in, std::span<double> out) const;

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

/// Angular wavenumbers 2*pi*j/period for j = 0..n/2 (half spectrum).
std::vector<double> half_wavenumbers(std::size_t n, double period);

/// d^order/dx^order of periodic samples by Fourier multiplication. The
/// Nyquist mode is dropped for odd orders.
std::vector<double> spectral_derivative(std::span<const double> values, double period, int order);

/// Values of the trigonometric interpolant at x_j + shift.
std::vector<double> spectral_shift(std::span<const double> values, double period, double shift);

/// Trigonometric interpolant of samples on x0 + j*period/n, evaluated at
/// arbitrary points. Direct summation, O(n * points).
std::vector<double> trig_interpolate(std::span<const double> values, double x0, double period,
                                     std::span<const double> points);

/// Fourth-order central differences on a periodic uniform grid.
std::vector<double> fd4_derivative(std::span<const double> values, double h, int order);

}  // namespace chlab
