#include "chlab/cauchy.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "chlab/errors.hpp"
#include "chlab/numerics.hpp"

namespace chlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx kI(0.0, 1.0);
}  // namespace

double CauchyDensity::singular_part(double s) {
  const double s2 = s * s;
  return std::log(s2 / (s2 + 1.0)) / kTwoPi;
}

CauchyDensity::CauchyDensity(std::vector<double> s, std::vector<double> v, int mu)
    : s_(std::move(s)), f_(std::move(v)), mu_(mu) {
  const std::size_t n = s_.size();
  if (n < 8 || f_.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "Cauchy density needs >= 8 matching samples");
  }
  h_ = s_[1] - s_[0];
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs((s_[j] - s_[j - 1]) - h_) > 1e-9 * h_) {
      throw Error(ErrorCode::InvalidArgument, "Cauchy density grid must be uniform");
    }
  }
  if (std::abs(s_.front() + s_.back()) > 1e-9 * h_) {
    throw Error(ErrorCode::InvalidArgument, "Cauchy density grid must be symmetric about 0");
  }
  if (mu_ < 0) {
    // Near 0 the density behaves like (mu/pi) log|s| + smooth. Compare the two
    // innermost positive nodes to read off mu and round to 0 or 1.
    std::size_t i0 = n / 2;
    while (i0 < n && s_[i0] <= 0.0) ++i0;
    const double s1 = s_[i0];
    const double s2 = s_[std::min(n - 1, i0 + 1)];
    const double slope = (f_[std::min(n - 1, i0 + 1)] - f_[i0]) / std::log(s2 / s1);
    mu_ = (slope * std::numbers::pi > 0.5) ? 1 : 0;
  }
  if (mu_ != 0) {
    for (std::size_t j = 0; j < n; ++j) f_[j] -= mu_ * singular_part(s_[j]);
  }
  w_ = gregory_weights(n, h_);
}

double CauchyDensity::smooth_at(double s) const {
  if (s <= s_.front() || s >= s_.back()) return 0.0;
  const double pos = (s - s_.front()) / h_;
  const auto j = static_cast<std::size_t>(pos);
  const double t = pos - static_cast<double>(j);
  return (1.0 - t) * f_[j] + t * f_[std::min(j + 1, f_.size() - 1)];
}

cplx CauchyDensity::singular_tail(cplx z, int power) const {
  // int_{|s| > S} singular_part(s)/(s - z)^power ds with s = +-S/tau.
  const double S = s_.back();
  auto integrand = [&](double tau) {
    if (tau <= 0.0) return cplx(0.0);
    const double s = S / tau;
    const double jac = S / (tau * tau);
    const double g = singular_part(s) * jac;
    return g / std::pow(s - z, power) + g / std::pow(-s - z, power);
  };
  using boost::math::quadrature::gauss;
  auto re = gauss<double, 30>::integrate([&](double t) { return integrand(t).real(); }, 0.0, 1.0);
  auto im = gauss<double, 30>::integrate([&](double t) { return integrand(t).imag(); }, 0.0, 1.0);
  return {re, im};
}

cplx CauchyDensity::singular_transform(cplx z) const {
  if (z.imag() > 0.0) return kI * std::log(z / (z + kI));
  return -kI * std::log(z / (z - kI));
}

cplx CauchyDensity::singular_transform_derivative(cplx z) const {
  if (z.imag() > 0.0) return kI * (1.0 / z - 1.0 / (z + kI));
  return -kI * (1.0 / z - 1.0 / (z - kI));
}

cplx CauchyDensity::transform(cplx z) const {
  // Subtract the smooth part's value at Re z so the quadrature sees a bounded
  // integrand even close to the axis; the subtracted piece is exact.
  const double S = s_.back();
  const double f0 = smooth_at(z.real());
  cplx acc = 0.0;
  for (std::size_t j = 0; j < s_.size(); ++j) acc += w_[j] * (f_[j] - f0) / (s_[j] - z);
  acc += f0 * std::log((S - z) / (-S - z));
  cplx out = acc;
  if (mu_ != 0) {
    out += static_cast<double>(mu_) * (singular_transform(z) - singular_tail(z, 1));
  }
  return out;
}

cplx CauchyDensity::transform_derivative(cplx z) const {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < s_.size(); ++j) {
    const cplx d = s_[j] - z;
    acc += w_[j] * f_[j] / (d * d);
  }
  if (mu_ != 0) {
    acc += static_cast<double>(mu_) *
           (singular_transform_derivative(z) - singular_tail(z, 2));
  }
  return acc;
}

cplx CauchyDensity::boundary_plus(std::size_t j) const {
  const double k = s_[j];
  const double S = s_.back();
  const std::size_t n = s_.size();
  // Principal value of the smooth part by subtraction; the removable point
  // takes the central-difference derivative.
  double pv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double g;
    if (i == j) {
      const std::size_t lo = (j == 0) ? 0 : j - 1;
      const std::size_t hi = (j + 1 == n) ? j : j + 1;
      g = (f_[hi] - f_[lo]) / (s_[hi] - s_[lo]);
    } else {
      g = (f_[i] - f_[j]) / (s_[i] - k);
    }
    pv += w_[i] * g;
  }
  pv += f_[j] * std::log(std::abs((S - k) / (-S - k)));
  cplx out(pv, std::numbers::pi * f_[j]);
  if (mu_ != 0) {
    // Boundary value of i log(z/(z+i)) with log(k + i0) = log|k| + i pi for k < 0.
    const cplx log_k(std::log(std::abs(k)), k < 0.0 ? std::numbers::pi : 0.0);
    const cplx closed = kI * (log_k - std::log(cplx(k, 1.0)));
    out += static_cast<double>(mu_) * (closed - singular_tail(cplx(k, 0.0), 1));
  }
  return out;
}

std::vector<double> log_modulus_density(const std::vector<cplx>& r) {
  std::vector<double> v(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double q = 1.0 - std::norm(r[j]);
    if (!(q > 0.0)) throw Error(ErrorCode::InvalidArgument, "|r| >= 1 on the grid");
    v[j] = std::log(q) / kTwoPi;
  }
  return v;
}

}  // namespace chlab
