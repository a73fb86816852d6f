#include "chlab/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "chlab/errors.hpp"

namespace chlab {

namespace {

constexpr double kBoundaryTol = 1e-12;

cplx phase_denominator(cplx k) {
  const cplx d = 2.0 * k * k + 0.5;
  if (std::abs(d) < 1e-14) {
    std::ostringstream msg;
    msg << "theta is singular at k = " << k;
    throw Error(ErrorCode::PoleOfPhase, msg.str());
  }
  return d;
}

double theta_prime_real(double k, double xi) {
  const double d = 2.0 * k * k + 0.5;
  return xi - (0.5 - 2.0 * k * k) / (d * d);
}

double theta_second_real(double k) {
  const double d = 2.0 * k * k + 0.5;
  return 4.0 * k * (1.5 - 2.0 * k * k) / (d * d * d);
}

template <typename F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void add_unique(std::vector<double>& roots, double r) {
  for (double q : roots) {
    if (std::abs(q - r) < 1e-6) return;
  }
  roots.push_back(r);
}

}  // namespace

cplx theta(cplx k, double xi) { return k * xi - k / phase_denominator(k); }

double im_theta(cplx k, double xi) {
  const cplx d = phase_denominator(k);
  return k.imag() * (xi - (0.5 - 2.0 * std::norm(k)) / std::norm(d));
}

cplx theta_prime(cplx k, double xi) {
  const cplx d = phase_denominator(k);
  return xi - (0.5 - 2.0 * k * k) / (d * d);
}

double soliton_velocity(double kappa) { return 2.0 / (1.0 - 4.0 * kappa * kappa); }

std::string_view to_string(Region region) noexcept {
  switch (region) {
    case Region::LeftNoPoints: return "LeftNoPoints";
    case Region::FourPoints: return "FourPoints";
    case Region::TwoPoints: return "TwoPoints";
    case Region::RightNoPoints: return "RightNoPoints";
    case Region::BoundaryMinusQuarter: return "BoundaryMinusQuarter";
    case Region::BoundaryZero: return "BoundaryZero";
    case Region::BoundaryTwo: return "BoundaryTwo";
  }
  return "Unknown";
}

bool is_open_no_point_region(Region region) noexcept {
  return region == Region::LeftNoPoints || region == Region::RightNoPoints;
}

Region classify_region(double xi) {
  if (std::abs(xi + 0.25) <= kBoundaryTol) return Region::BoundaryMinusQuarter;
  if (std::abs(xi) <= kBoundaryTol) return Region::BoundaryZero;
  if (std::abs(xi - 2.0) <= kBoundaryTol) return Region::BoundaryTwo;
  if (xi < -0.25) return Region::LeftNoPoints;
  if (xi < 0.0) return Region::FourPoints;
  if (xi < 2.0) return Region::TwoPoints;
  return Region::RightNoPoints;
}

std::vector<double> stationary_points(double xi) {
  if (std::abs(xi) < 1e-12) return stationary_points_scan(xi);
  // theta' = 0  <=>  xi s^2 + (xi + 1) s + xi/4 - 1/2 = 0 with s = 2k^2.
  const double b = xi + 1.0;
  const double c = xi / 4.0 - 0.5;
  const double disc = 4.0 * xi + 1.0;
  std::vector<double> s_roots;
  if (disc < -1e-15) return {};
  if (disc <= 1e-15) {
    s_roots.push_back(-b / (2.0 * xi));
  } else {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    s_roots.push_back(q / xi);
    s_roots.push_back(c / q);
  }
  std::vector<double> ks;
  for (double s : s_roots) {
    if (s < -1e-14) continue;
    if (s <= 1e-14) {
      add_unique(ks, 0.0);
      continue;
    }
    double k = std::sqrt(s / 2.0);
    // One or two Newton steps clean up cancellation in the quadratic; skip
    // them where theta'' vanishes (the tangency at xi = -1/4).
    for (int it = 0; it < 3; ++it) {
      const double d2 = theta_second_real(k);
      if (std::abs(d2) < 1e-6) break;
      const double next = k - theta_prime_real(k, xi) / d2;
      if (std::abs(theta_prime_real(next, xi)) >= std::abs(theta_prime_real(k, xi))) break;
      k = next;
    }
    ks.push_back(k);
    ks.push_back(-k);
  }
  std::sort(ks.begin(), ks.end(), std::greater<>());
  return ks;
}

std::vector<double> stationary_points_scan(double xi, double kmax, std::size_t samples) {
  std::vector<double> roots;
  const double dk = 2.0 * kmax / static_cast<double>(samples);
  auto fp = [xi](double k) { return theta_prime_real(k, xi); };
  double k0 = -kmax;
  double f0 = fp(k0);
  double g0 = theta_second_real(k0);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double k1 = -kmax + static_cast<double>(i) * dk;
    const double f1 = fp(k1);
    const double g1 = theta_second_real(k1);
    if (f0 == 0.0) {
      add_unique(roots, k0);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
      add_unique(roots, bisect(fp, k0, k1));
    }
    // A touching zero shows up as an extremum of theta' with value ~0.
    if ((g0 < 0.0) != (g1 < 0.0)) {
      const double ke = bisect([](double k) { return theta_second_real(k); }, k0, k1);
      if (std::abs(fp(ke)) < 1e-9) add_unique(roots, ke);
    }
    k0 = k1;
    f0 = f1;
    g0 = g1;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

double admissible_angle(double xi) {
  const Region region = classify_region(xi);
  if (!is_open_no_point_region(region)) {
    throw Error(ErrorCode::PreconditionViolated,
                "admissible angle is defined only for xi < -1/4 or xi > 2");
  }
  const double d = std::sqrt(1.0 - 2.0 / xi);
  // sqrt(2(cos 2phi + 1)) = 2 cos(phi) for |phi| < pi/2.
  if (xi < 0.0) {
    const double lower = 0.5 * (d - 1.0);
    if (lower >= 1.0) throw Error(ErrorCode::NoAdmissibleAngle, "empty angle window");
    const double phi_max = std::acos(std::max(lower, -1.0));
    return std::min(std::numbers::pi / 8.0, 0.5 * phi_max);
  }
  const double phi_lo = std::acos(0.5 * (1.0 + d));
  const double phi_hi = std::acos(0.5 * (1.0 - d));
  if (!(phi_hi > phi_lo)) throw Error(ErrorCode::NoAdmissibleAngle, "empty angle window");
  // The window for xi > 2 excludes small angles, so the pi/8 cap cannot
  // apply; the midpoint keeps the sector uniformly inside it.
  return 0.5 * (phi_lo + phi_hi);
}

SectorReport sector_sign_check(double xi, double phi, std::size_t samples, std::uint64_t seed) {
  const Region region = classify_region(xi);
  if (!is_open_no_point_region(region)) {
    throw Error(ErrorCode::PreconditionViolated,
                "sector sign check needs xi < -1/4 or xi > 2");
  }
  const bool left = region == Region::LeftNoPoints;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_r(std::log(1e-3), std::log(1e3));
  std::uniform_real_distribution<double> ang(0.0, 1.0);
  SectorReport rep;
  rep.samples = samples;
  rep.c_xi = left ? -std::numeric_limits<double>::infinity()
                  : std::numeric_limits<double>::infinity();
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const double radius = std::exp(log_r(rng));
    double w = phi * (1.0 - ang(rng));  // (0, phi]
    switch (i % 4) {
      case 0: break;                               // sector 1: arg in [0, phi]
      case 1: w = std::numbers::pi - w; break;     // sector 2
      case 2: w = std::numbers::pi + w; break;     // sector 3
      default: w = 2.0 * std::numbers::pi - w;     // sector 4
    }
    const cplx k = std::polar(radius, w);
    if (k.imag() == 0.0) continue;
    const double ratio = im_theta(k, xi) / k.imag();
    const bool ok = left ? ratio < 0.0 : ratio > 0.0;
    if (!ok) {
      std::ostringstream msg;
      msg << "Im theta / Im k = " << ratio << " at k = " << k << " (xi = " << xi << ")";
      throw Error(ErrorCode::SignViolation, msg.str());
    }
    rep.c_xi = left ? std::max(rep.c_xi, ratio) : std::min(rep.c_xi, ratio);
    rep.worst_margin = std::min(rep.worst_margin, std::abs(ratio));
  }
  return rep;
}

PolePartition pole_partition(const std::vector<double>& poles, double xi, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  PolePartition part;
  for (std::size_t n = 0; n < poles.size(); ++n) {
    const double v = im_theta(cplx(0.0, poles[n]), xi);
    part.im_theta.push_back(v);
    if (v > delta) {
      part.delta_plus.push_back(n);
    } else if (v < -delta) {
      part.delta_minus.push_back(n);
    } else {
      part.lambda_set.push_back(n);
      continue;
    }
    const double a = std::abs(v);
    part.rho0 = part.rho0 ? std::min(*part.rho0, a) : a;
  }
  return part;
}

PhaseGeometry build_phase_geometry(const std::vector<double>& poles, double xi, double delta) {
  PhaseGeometry g;
  g.xi = xi;
  g.region = classify_region(xi);
  g.stationary = stationary_points(xi);
  g.delta0 = delta;
  if (is_open_no_point_region(g.region)) g.phi = admissible_angle(xi);
  g.partition = pole_partition(poles, xi, delta);
  return g;
}

}  // namespace chlab
