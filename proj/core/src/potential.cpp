#include "chlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chlab/errors.hpp"
#include "chlab/spectral.hpp"

namespace chlab {

SpatialGrid SpatialGrid::make_uniform(double L, std::size_t n) {
  if (!(L > 0.0) || n < 16 || n % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "grid needs L > 0 and an even node count >= 16");
  }
  SpatialGrid g;
  g.L = L;
  g.h = 2.0 * L / static_cast<double>(n);
  g.nodes.resize(n);
  for (std::size_t j = 0; j < n; ++j) g.nodes[j] = -L + static_cast<double>(j) * g.h;
  return g;
}

PotentialProfile build_profile(std::vector<double> u0, const SpatialGrid& grid,
                               const ProfileOptions& options) {
  const std::size_t n = grid.size();
  if (u0.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "profile sample count does not match the grid");
  }
  PotentialProfile p;
  p.grid = grid;
  p.u0 = std::move(u0);
  if (options.scheme == DiffScheme::Spectral) {
    p.u0_x = spectral_derivative(p.u0, grid.period(), 1);
    p.u0_xx = spectral_derivative(p.u0, grid.period(), 2);
  } else {
    p.u0_x = fd4_derivative(p.u0, grid.h, 1);
    p.u0_xx = fd4_derivative(p.u0, grid.h, 2);
  }

  if (options.check_decay) {
    const std::size_t band = std::max<std::size_t>(1, n / 100);
    for (std::size_t i = 0; i < band; ++i) {
      for (std::size_t j : {i, n - 1 - i}) {
        const double tail = std::abs(p.u0[j]) + std::abs(p.u0_x[j]);
        if (tail > options.delta_decay) {
          std::ostringstream msg;
          msg << "|u0| + |u0_x| = " << tail << " at x = " << grid.nodes[j];
          throw Error(ErrorCode::InsufficientDecay, msg.str());
        }
      }
    }
  }

  p.m.resize(n);
  p.sqrt_weight.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    p.m[j] = p.u0[j] - p.u0_xx[j];
    const double mp1 = p.m[j] + 1.0;
    if (mp1 < options.eps_pos) {
      std::ostringstream msg;
      msg << "m + 1 = " << mp1 << " at x = " << grid.nodes[j];
      throw Error(ErrorCode::MomentumNotPositive, msg.str());
    }
    p.sqrt_weight[j] = std::sqrt(mp1);
  }
  return p;
}

ScaleMap::ScaleMap(std::vector<double> x, std::vector<double> y, double total_shift)
    : x_(x), y_(y), total_shift_(total_shift), forward_(x, y), inverse_(std::move(y), std::move(x)) {}

ScaleMap y_of_x(const PotentialProfile& profile) {
  const auto& x = profile.grid.nodes;
  const std::size_t n = x.size();
  const double h = profile.grid.h;
  std::vector<double> y(n);
  // Right-to-left cumulative trapezoid of g = sqrt(m+1) - 1; the tail past the
  // last node is dropped, which the decay check justifies.
  double acc = 0.0;
  y[n - 1] = x[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) {
    const double g0 = profile.sqrt_weight[j] - 1.0;
    const double g1 = profile.sqrt_weight[j + 1] - 1.0;
    acc += 0.5 * h * (g0 + g1);
    y[j] = x[j] - acc;
  }
  return ScaleMap(x, std::move(y), conserved_shift(profile));
}

double conserved_shift(const PotentialProfile& profile) {
  double s = 0.0;
  for (double w : profile.sqrt_weight) s += w - 1.0;
  return s * profile.grid.h;
}

std::vector<double> sech2_samples(const SpatialGrid& grid, double A, double w, double x0) {
  std::vector<double> u(grid.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double c = std::cosh((grid.nodes[j] - x0) / w);
    u[j] = A / (c * c);
  }
  return u;
}

}  // namespace chlab
