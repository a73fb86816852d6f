#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace chlab {

using cplx = std::complex<double>;

/// theta(k; xi) = k xi - k / (2k^2 + 1/2). Throws PoleOfPhase at k = +-i/2.
cplx theta(cplx k, double xi);
/// Im theta via the closed-form expansion in Re k and Im k.
double im_theta(cplx k, double xi);
/// d theta / dk.
cplx theta_prime(cplx k, double xi);

/// Velocity 2/(1 - 4 kappa^2) of the soliton attached to the pole i kappa,
/// i.e. the ray on which Im theta(i kappa) vanishes.
double soliton_velocity(double kappa);

enum class Region {
  LeftNoPoints,
  FourPoints,
  TwoPoints,
  RightNoPoints,
  BoundaryMinusQuarter,
  BoundaryZero,
  BoundaryTwo,
};

std::string_view to_string(Region region) noexcept;
bool is_open_no_point_region(Region region) noexcept;

/// Real stationary points of theta, sorted descending.
std::vector<double> stationary_points(double xi);

/// Brute-force sign scan of theta' on [-kmax, kmax], refined by bisection.
/// Independent of the quadratic solver; used as its oracle.
std::vector<double> stationary_points_scan(double xi, double kmax = 10.0,
                                           std::size_t samples = 1'000'000);

Region classify_region(double xi);

/// Sector half-angle for the lens contours in the regions without
/// stationary points. Throws NoAdmissibleAngle or PreconditionViolated.
double admissible_angle(double xi);

struct SectorReport {
  double c_xi = 0.0;          ///< sup (for xi < -1/4) or inf (xi > 2) of Im theta / Im k
  double worst_margin = 0.0;  ///< smallest |Im theta| / |Im k| seen on the sampled rays
  std::size_t samples = 0;
};

/// Samples Im theta on rays inside the four lens sectors and checks the sign
/// pattern. Throws SignViolation with the offending k.
SectorReport sector_sign_check(double xi, double phi, std::size_t samples,
                               std::uint64_t seed = 0x5eed);

struct PolePartition {
  std::vector<std::size_t> delta_plus;   ///< Im theta(k_n) > delta
  std::vector<std::size_t> delta_minus;  ///< Im theta(k_n) < -delta
  std::vector<std::size_t> lambda_set;   ///< |Im theta(k_n)| <= delta
  std::vector<double> im_theta;
  std::optional<double> rho0;            ///< min |Im theta| outside lambda_set
};

PolePartition pole_partition(const std::vector<double>& poles, double xi, double delta = 0.05);

struct PhaseGeometry {
  double xi = 0.0;
  Region region = Region::TwoPoints;
  std::vector<double> stationary;
  std::optional<double> phi;
  double delta0 = 0.05;
  PolePartition partition;
};

PhaseGeometry build_phase_geometry(const std::vector<double>& poles, double xi,
                                   double delta = 0.05);

}  // namespace chlab
