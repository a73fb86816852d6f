#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "chlab/potential.hpp"

namespace chlab {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

enum class Side { Left, Right };

/// Which columns of the normalized Jost matrix to propagate. Off the real
/// axis only one column of each side stays bounded.
enum class Columns { Both, First, Second };

struct JostOptions {
  double k_min = 1e-3;
  double divergence_bound = 1e12;
};

/// Normalized Jost solution over the closed grid x_0 = -L .. x_n = L.
struct JostField {
  cplx k;
  Side side = Side::Left;
  std::vector<Mat2> phi;  ///< n + 1 entries; phi[j] sits at x = -L + j h
};

struct ScatteringPair {
  cplx a;
  cplx b;  ///< NaN off the real axis
};

/// Coefficients of the x-part of the Lax pair tabulated at grid nodes and
/// cell midpoints, shared by every spectral parameter.
class JostSolver {
 public:
  explicit JostSolver(const PotentialProfile& profile, JostOptions options = {});

  /// Integrates Phi_x = -ik p_x [sigma3, Phi] + U Phi from the chosen end with
  /// Phi = I there. Throws IntegratorDiverged or NearZeroK.
  JostField solve(cplx k, Side side, Columns columns = Columns::Both) const;

  /// Same integration on the doubled step 2h, returning only the value at the
  /// matching point. Used for a Richardson error estimate.
  Mat2 solve_coarse_at_center(cplx k, Side side, Columns columns = Columns::Both) const;

  /// a(k) and, for real k, b(k) at the matching point x* = 0.
  ScatteringPair coefficients(cplx k) const;

  /// a(i kappa), real by symmetry.
  double a_imag_axis(double kappa) const;

  const PotentialProfile& profile() const noexcept { return *profile_; }
  /// Phase primitive p(x) = y(x) at t = 0, tabulated at the n + 1 closed-grid nodes.
  const std::vector<double>& p_nodes() const noexcept { return p_; }
  std::size_t center() const noexcept { return center_; }

 private:
  Mat2 generator(cplx k, double px, double m, double mx) const;

  const PotentialProfile* profile_;
  JostOptions options_;
  std::size_t n_;
  std::size_t center_;
  double h_;
  // Closed-grid tables (n + 1 entries, periodic wrap) and midpoints (n entries).
  std::vector<double> px_, m_, mx_;
  std::vector<double> px_mid_, m_mid_, mx_mid_;
  std::vector<double> p_;
};

/// Convenience wrappers matching the one-shot operations.
JostField jost_solve(const PotentialProfile& profile, cplx k, Side side);
ScatteringPair scattering_coefficients(const PotentialProfile& profile, cplx k);

struct ScatteringData {
  double K_max = 0.0;
  std::vector<double> k;
  std::vector<cplx> r;
  std::vector<cplx> a;
  std::vector<cplx> b;
  std::vector<double> poles;    ///< kappa_n, ascending
  std::vector<double> norming;  ///< real c_n
  double a_half_i = 1.0;
};

/// Cell-centred symmetric grid k_j = -K + (j + 1/2) 2K/nk; nk must be even so
/// that k = 0 is never a node.
std::vector<double> symmetric_k_grid(double K_max, std::size_t nk);

struct ReflectionOptions {
  double K_max = 8.0;
  std::size_t nk = 1024;
  int threads = 1;
  double tolerance = 1e-6;  ///< unimodularity and symmetry gates
};

/// Samples a, b and r = b/a. Throws SymmetryViolation if |a|^2 - |b|^2 = 1 or
/// r(-k) = conj(r(k)) fails beyond the tolerance.
ScatteringData reflection(const JostSolver& solver, const ReflectionOptions& options);

struct EigenOptions {
  double kappa_min = 1e-3;
  std::size_t scan_points = 400;
  double a_tolerance = 1e-10;
};

/// Zeros of a(i kappa) on (kappa_min, 1/2 - kappa_min), ascending.
std::vector<double> find_eigenvalues(const JostSolver& solver, const EigenOptions& options = {});

struct NormingResult {
  double c = 0.0;       ///< real norming constant
  double c_imag = 0.0;  ///< imaginary residue, zero up to rounding
  double b = 0.0;       ///< column proportionality constant
  double a_prime = 0.0; ///< d/dkappa a(i kappa)
  double residual = 0.0;
};

/// Norming constants c_n = b_n / (d/dkappa a(i kappa_n)). Throws
/// DegenerateColumn if the columns are not proportional to 1e-4.
std::vector<NormingResult> norming_constants(const JostSolver& solver,
                                             const std::vector<double>& poles,
                                             double residual_limit = 1e-4);

struct TraceReport {
  double max_rel_residual = 0.0;  ///< over the requested |k| band
  double half_i_residual = 0.0;   ///< |a(i/2) exp(total_shift/2) - 1|
  int singular_order = 0;         ///< detected zero order of 1 - |r|^2 at k = 0
  std::vector<double> k;
  std::vector<double> rel_residual;
};

/// Compares sampled a(k) with its reconstruction from |r| and the poles, and
/// a(i/2) with exp(-total_shift/2).
TraceReport trace_formula_check(const ScatteringData& data, double total_shift,
                                double k_lo = 0.0, double k_hi = 1e300);

/// a(k) rebuilt from |r| on the grid and the poles, at a grid node.
cplx trace_formula_a(const ScatteringData& data, std::size_t node);

}  // namespace chlab
