#pragma once

#include <cstddef>
#include <vector>

#include "chlab/numerics.hpp"

namespace chlab {

/// Uniform periodic grid x_j = -L + j*h, j = 0..n-1, with h = 2L/n.
struct SpatialGrid {
  double L = 0.0;
  double h = 0.0;
  std::vector<double> nodes;

  static SpatialGrid make_uniform(double L, std::size_t n);

  std::size_t size() const noexcept { return nodes.size(); }
  double period() const noexcept { return 2.0 * L; }
  /// Index of the node nearest to x = 0 (the matching point).
  std::size_t center_index() const noexcept { return nodes.size() / 2; }
};

enum class DiffScheme { Spectral, CentralFD4 };

struct ProfileOptions {
  double eps_pos = 1e-6;
  double delta_decay = 1e-8;
  DiffScheme scheme = DiffScheme::Spectral;
  bool check_decay = true;
};

/// Initial wave height with its derivatives and momentum m = u - u_xx.
struct PotentialProfile {
  SpatialGrid grid;
  std::vector<double> u0;
  std::vector<double> u0_x;
  std::vector<double> u0_xx;
  std::vector<double> m;
  std::vector<double> sqrt_weight;  ///< sqrt(m + 1)
};

/// Validates and differentiates sampled initial data.
/// Throws MomentumNotPositive or InsufficientDecay.
PotentialProfile build_profile(std::vector<double> u0, const SpatialGrid& grid,
                               const ProfileOptions& options = {});

/// Tabulated monotone change of variables y(x) = x - int_x^inf (sqrt(m+1) - 1).
class ScaleMap {
 public:
  ScaleMap(std::vector<double> x, std::vector<double> y, double total_shift);

  const std::vector<double>& x_nodes() const noexcept { return x_; }
  const std::vector<double>& y_nodes() const noexcept { return y_; }
  double total_shift() const noexcept { return total_shift_; }

  double y_of(double x) const { return forward_(x); }
  double x_of(double y) const { return inverse_(y); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  double total_shift_;
  MonotoneCurve forward_;
  MonotoneCurve inverse_;
};

ScaleMap y_of_x(const PotentialProfile& profile);

/// int (sqrt(m+1) - 1) dx over the grid, equal to -2 ln a(i/2).
double conserved_shift(const PotentialProfile& profile);

/// A sech^2((x - x0)/w) sampled on the grid.
std::vector<double> sech2_samples(const SpatialGrid& grid, double A, double w, double x0 = 0.0);

}  // namespace chlab
