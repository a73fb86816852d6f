#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "chlab/cauchy.hpp"
#include "chlab/phase.hpp"
#include "chlab/scattering.hpp"

namespace chlab {

using cplx = std::complex<double>;

/// Poles k_n = i kappa_n with real norming constants c_n.
struct DiscreteSpectrum {
  std::vector<double> poles;
  std::vector<double> constants;

  /// Sorts by kappa and rejects duplicates or kappa outside (0, 1/2).
  void normalize();
  /// a(i/2) of the reflectionless data: prod (1/2 - kappa)/(1/2 + kappa).
  double a_half_i() const;
};

/// Scaled residue data the model problem is built from. Each pole carries the
/// complex constant that multiplies exp(2 kappa (y - v t)).
struct ModelData {
  std::vector<double> poles;
  std::vector<cplx> constants;
  /// x = y + ln(N1/N2) + log_shift; -2 ln a(i/2) (and -2 ln T(i/2) for the
  /// conjugated problem).
  double log_shift = 0.0;
};

/// Exact reflectionless solution data.
ModelData reflectionless_model(const DiscreteSpectrum& spectrum);

/// log(1 - |r|^2)/(2 pi) on the scattering grid, ready for Cauchy transforms.
CauchyDensity reflection_density(const ScatteringData& data);

/// delta(k, xi) = exp(-i int_{L(xi)} v(s)/(s - k) ds). L is empty for
/// xi < 2 and the real line for xi > 2. Throws ContourCollision when k is
/// within two grid steps of the real line and L is not empty.
cplx delta_factor(cplx k, double xi, const CauchyDensity& density);

struct TFactor {
  cplx value;
  cplx value_at_half_i;
  cplx J0;  ///< delta(i/2, xi)
  cplx J1;  ///< -i int_L v(s)/(s - i/2)^2 ds
};

/// T(k) = prod_{n in Delta+} (k + k_n)/(k - k_n) delta(k, xi).
TFactor t_factor(cplx k, double xi, const std::vector<double>& poles,
                 const PolePartition& partition, const CauchyDensity* density);

struct ModifiedConvention {
  int delta_power = 1;
  int blaschke_power = -2;
};

struct ModifiedSpectrum {
  DiscreteSpectrum base;
  double xi = 0.0;
  std::vector<cplx> delta_values;
  std::vector<double> blaschke_extras;
  std::vector<cplx> c_tilde;
};

ModifiedSpectrum modified_data(const DiscreteSpectrum& spectrum, double xi,
                               const CauchyDensity* density, const PolePartition& partition,
                               ModifiedConvention convention = {});

struct ResidueCoefficients {
  Eigen::VectorXcd alpha, beta, gamma, zeta;
  double condition = 1.0;  ///< 1 / rcond of the larger block
};

/// Solves the 4N linear system for the pole residues of M^Lambda at (y, t).
/// Throws SingularSystem or SymmetryViolation.
ResidueCoefficients solve_residue_system(const ModelData& data, double y, double t);

struct MValue {
  Eigen::Matrix2cd M;
  Eigen::Matrix2cd dM;
};

MValue evaluate_M_Lambda(const ResidueCoefficients& coeffs, const ModelData& data, cplx k);

struct PointValue {
  double u = 0.0;
  double x = 0.0;
  double u_imag = 0.0;
  double x_imag = 0.0;
};

/// u and x at (y, t) from the expansion of M^Lambda at k = i/2.
PointValue reconstruct(const ModelData& data, double y, double t);

struct ParametricSolution {
  double t = 0.0;
  std::vector<double> y;
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> x_uniform;
  std::vector<double> u_on_x;
};

/// Tabulates (y, x, u) on [y0, y1] and resamples u on a uniform x-grid.
/// Throws NonMonotoneX.
ParametricSolution sample_solution(const ModelData& data, double t, double y0, double y1,
                                   std::size_t n, int threads = 1);

/// u at a physical point x by inverting x(y, t) with a bracketing solver.
double u_at_x(const ModelData& data, double x, double t);
/// The y with x(y, t) = x.
double y_at_x(const ModelData& data, double x, double t);

struct Approximant {
  PhaseGeometry geometry;
  ModifiedSpectrum modified;
  ModelData model;
  cplx T_half_i;
};

/// Model data for the long-time approximant on the ray xi: poles in Lambda
/// with modified constants, Delta poles folded into T(i/2).
Approximant asymptotic_approximant(const DiscreteSpectrum& spectrum, double xi,
                                   const CauchyDensity* density, double a_half_i,
                                   double delta = 0.05, ModifiedConvention convention = {});

}  // namespace chlab
