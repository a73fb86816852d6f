#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace chlab {

/// Uniform periodic grid on [x_min, x_max) for the direct solver.
struct PeriodicGrid {
  double x_min = -200.0;
  double x_max = 600.0;
  std::size_t modes = 4096;

  double h() const noexcept { return (x_max - x_min) / static_cast<double>(modes); }
  double period() const noexcept { return x_max - x_min; }
  std::vector<double> nodes() const;
};

struct Ledger {
  double q1 = 0.0;  ///< int u
  double q2 = 0.0;  ///< int (u^2 + u_x^2)
  double q3 = 0.0;  ///< int (sqrt(m + 1) - 1)
};

struct FieldState {
  double t = 0.0;
  PeriodicGrid grid;
  std::vector<double> u;
  Ledger ledger;
};

struct PdeOptions {
  double dt = 2e-3;
  double blowup = 1e3;
  /// Positivity of m + 1 is checked every this many steps and at snapshots.
  std::size_t check_every = 25;
};

/// Conserved quantities by the periodic trapezoid rule with spectral
/// derivatives. Throws BlowUp if m + 1 <= 0.
Ledger ledger(const PeriodicGrid& grid, const std::vector<double>& u);

/// Evolves u_t + u u_x + d_x (1 - d_x^2)^{-1} (u^2 + u_x^2/2 + 2u) = 0 with
/// Fourier collocation, 2/3-rule dealiasing of the products and classical
/// RK4. Returns one state per requested snapshot time (ascending, >= 0);
/// steps are shortened to land on each time exactly.
/// Throws BlowUp, or PreconditionViolated if dt breaks the CFL bound.
std::vector<FieldState> evolve(const PeriodicGrid& grid, std::vector<double> u0,
                               const std::vector<double>& snapshot_times,
                               const PdeOptions& options = {},
                               const std::function<void(const FieldState&)>& on_snapshot = {});

/// The CFL bound 0.5 h / max(1, sup|u| + 2).
double cfl_limit(const PeriodicGrid& grid, const std::vector<double>& u);

}  // namespace chlab
