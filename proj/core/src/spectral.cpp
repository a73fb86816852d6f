#include "chlab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "chlab/errors.hpp"

namespace chlab {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

RealFft::RealFft(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "FFT length must be >= 2");
  std::vector<double> r(n);
  std::vector<cplx> c(n / 2 + 1);
  auto* cp = reinterpret_cast<fftw_complex*>(c.data());
  const int len = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  plans_->r2c = fftw_plan_dft_r2c_1d(len, r.data(), cp, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->c2r = fftw_plan_dft_c2r_1d(len, cp, r.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_DESTROY_INPUT);
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::forward(std::span<const double> in, std::span<cplx> out) const {
  // r2c does not modify its input, FFTW just lacks const in the signature.
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void RealFft::inverse(std::span<const cplx> in, std::span<double> out) const {
  thread_local std::vector<cplx> scratch;
  scratch.assign(in.begin(), in.end());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : out) v *= scale;
}

std::vector<double> half_wavenumbers(std::size_t n, double period) {
  std::vector<double> k(n / 2 + 1);
  const double base = 2.0 * std::numbers::pi / period;
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = base * static_cast<double>(j);
  return k;
}

std::vector<double> spectral_derivative(std::span<const double> values, double period, int order) {
  const std::size_t n = values.size();
  RealFft fft(n);
  std::vector<cplx> spec(fft.spectrum_size());
  fft.forward(values, spec);
  const auto k = half_wavenumbers(n, period);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    spec[j] *= std::pow(cplx(0.0, k[j]), order);
  }
  if (n % 2 == 0 && order % 2 != 0) spec.back() = 0.0;
  std::vector<double> out(n);
  fft.inverse(spec, out);
  return out;
}

std::vector<double> spectral_shift(std::span<const double> values, double period, double shift) {
  const std::size_t n = values.size();
  RealFft fft(n);
  std::vector<cplx> spec(fft.spectrum_size());
  fft.forward(values, spec);
  const auto k = half_wavenumbers(n, period);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    spec[j] *= std::exp(cplx(0.0, k[j] * shift));
  }
  // Real interpolant: the Nyquist mode contributes cos(k_N (x + shift)).
  if (n % 2 == 0) spec.back() = cplx(spec.back().real(), 0.0);
  std::vector<double> out(n);
  fft.inverse(spec, out);
  return out;
}

std::vector<double> trig_interpolate(std::span<const double> values, double x0, double period,
                                     std::span<const double> points) {
  const std::size_t n = values.size();
  RealFft fft(n);
  std::vector<cplx> spec(fft.spectrum_size());
  fft.forward(values, spec);
  const auto k = half_wavenumbers(n, period);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double dx = points[p] - x0;
    double acc = spec[0].real();
    for (std::size_t j = 1; j < spec.size(); ++j) {
      const double w = (n % 2 == 0 && j == spec.size() - 1) ? 1.0 : 2.0;
      const double ph = k[j] * dx;
      acc += w * (spec[j].real() * std::cos(ph) - spec[j].imag() * std::sin(ph));
    }
    out[p] = acc * inv_n;
  }
  return out;
}

std::vector<double> fd4_derivative(std::span<const double> values, double h, int order) {
  const std::size_t n = values.size();
  auto at = [&](std::ptrdiff_t j) {
    const auto nn = static_cast<std::ptrdiff_t>(n);
    return values[static_cast<std::size_t>(((j % nn) + nn) % nn)];
  };
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::ptrdiff_t>(i);
    if (order == 1) {
      out[i] = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * h);
    } else if (order == 2) {
      out[i] = (-at(j + 2) + 16.0 * at(j + 1) - 30.0 * at(j) + 16.0 * at(j - 1) - at(j - 2)) /
               (12.0 * h * h);
    } else {
      throw Error(ErrorCode::InvalidArgument, "fd4_derivative supports order 1 or 2");
    }
  }
  return out;
}

}  // namespace chlab
