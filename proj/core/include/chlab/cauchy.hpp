#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace chlab {

using cplx = std::complex<double>;

/// Cauchy transforms of a density sampled on a uniform cell-centred grid
/// symmetric about 0.
///
/// The density may carry a logarithmic singularity at s = 0 of the form
/// mu/(2 pi) log(s^2 / (s^2 + 1)), which is what log(1 - |r|^2)/(2 pi) looks
/// like when |r(0)| = 1. That part is split off and handled in closed form so
/// the quadrature only sees a smooth remainder. mu is detected from the
/// samples nearest to 0 unless given explicitly.
class CauchyDensity {
 public:
  CauchyDensity(std::vector<double> s, std::vector<double> v, int mu = -1);

  std::size_t size() const noexcept { return s_.size(); }
  double step() const noexcept { return h_; }
  double half_width() const noexcept { return s_.back(); }
  int mu() const noexcept { return mu_; }
  const std::vector<double>& nodes() const noexcept { return s_; }

  /// int_R v(s)/(s - z) ds for z off the real axis (density zero past the grid
  /// apart from the closed-form singular part).
  cplx transform(cplx z) const;
  /// int_R v(s)/(s - z)^2 ds for z off the real axis.
  cplx transform_derivative(cplx z) const;
  /// Boundary value of transform() from the upper half-plane at node j.
  cplx boundary_plus(std::size_t j) const;

  /// Smooth remainder at an arbitrary point (linear interpolation).
  double smooth_at(double s) const;

  static double singular_part(double s);

 private:
  cplx singular_transform(cplx z) const;
  cplx singular_transform_derivative(cplx z) const;
  cplx singular_tail(cplx z, int power) const;

  std::vector<double> s_;
  std::vector<double> f_;  ///< smooth remainder v - mu * singular_part
  std::vector<double> w_;  ///< quadrature weights
  double h_;
  int mu_;
};

/// log(1 - |r|^2)/(2 pi) for each sample. Requires |r| < 1.
std::vector<double> log_modulus_density(const std::vector<cplx>& r);

}  // namespace chlab
