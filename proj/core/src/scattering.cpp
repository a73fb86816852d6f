#include "chlab/scattering.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chlab/cauchy.hpp"
#include "chlab/errors.hpp"
#include "chlab/numerics.hpp"
#include "chlab/spectral.hpp"

namespace chlab {

namespace {

const cplx kI(0.0, 1.0);

/// exp of a traceless 2x2 matrix: cosh(q) I + sinh(q)/q * W with q^2 = -det W.
Mat2 expm_traceless(const Mat2& W) {
  const cplx q2 = W(0, 0) * W(0, 0) + W(0, 1) * W(1, 0);
  cplx c, s;
  if (std::abs(q2) < 1e-8) {
    c = 1.0 + q2 / 2.0 + q2 * q2 / 24.0;
    s = 1.0 + q2 / 6.0 + q2 * q2 / 120.0;
  } else {
    const cplx q = std::sqrt(q2);
    c = std::cosh(q);
    s = std::sinh(q) / q;
  }
  Mat2 E = s * W;
  E(0, 0) += c;
  E(1, 1) += c;
  return E;
}

/// Fourth-order Magnus step from three equispaced generator samples.
Mat2 magnus_step(const Mat2& g0, const Mat2& gm, const Mat2& g1, double hs) {
  const Mat2 a1 = (hs / 6.0) * (g0 + 4.0 * gm + g1);
  const Mat2 a2 = hs * (g1 - g0);
  const Mat2 omega = a1 - (a1 * a2 - a2 * a1) / 12.0;
  return expm_traceless(omega);
}

void apply_mask(Mat2& phi, Columns columns) {
  if (columns == Columns::First) phi.col(1).setZero();
  if (columns == Columns::Second) phi.col(0).setZero();
}

std::vector<double> closed(std::vector<double> v) {
  v.push_back(v.front());
  return v;
}

}  // namespace

JostSolver::JostSolver(const PotentialProfile& profile, JostOptions options)
    : profile_(&profile), options_(options) {
  const auto& grid = profile.grid;
  n_ = grid.size();
  center_ = grid.center_index();
  h_ = grid.h;
  const double period = grid.period();

  const auto mx = spectral_derivative(profile.m, period, 1);
  px_mid_ = spectral_shift(profile.sqrt_weight, period, 0.5 * h_);
  m_mid_ = spectral_shift(profile.m, period, 0.5 * h_);
  mx_mid_ = spectral_shift(mx, period, 0.5 * h_);
  px_ = closed(profile.sqrt_weight);
  m_ = closed(profile.m);
  mx_ = closed(mx);

  // p(x) = x - int_x^L (sqrt(m+1) - 1), accumulated with the same Simpson
  // rule the integrator uses for its phase increments.
  p_.assign(n_ + 1, 0.0);
  p_[n_] = grid.L;
  for (std::size_t j = n_; j-- > 0;) {
    p_[j] = p_[j + 1] - (h_ / 6.0) * (px_[j] + 4.0 * px_mid_[j] + px_[j + 1]);
  }
}

Mat2 JostSolver::generator(cplx k, double px, double m, double mx) const {
  const cplx diag = -kI * k * px;
  const double off = mx / (4.0 * (m + 1.0));
  const cplx w = -(m / px) / (8.0 * kI * k);
  // -ik p_x sigma3 + off sigma1 + w J, J = [[-1, -1], [1, 1]]
  Mat2 A;
  A << diag - w, off - w, off + w, -diag + w;
  return A;
}

JostField JostSolver::solve(cplx k, Side side, Columns columns) const {
  if (std::abs(k) < options_.k_min) {
    throw Error(ErrorCode::NearZeroK, "|k| below k_min");
  }
  JostField field;
  field.k = k;
  field.side = side;
  field.phi.assign(n_ + 1, Mat2::Zero());

  auto node_gen = [&](std::size_t j) { return generator(k, px_[j], m_[j], mx_[j]); };
  auto mid_gen = [&](std::size_t j) { return generator(k, px_mid_[j], m_mid_[j], mx_mid_[j]); };
  auto check = [&](const Mat2& phi, std::size_t j) {
    if (!(phi.cwiseAbs().maxCoeff() <= options_.divergence_bound)) {
      std::ostringstream msg;
      msg << "Jost entry exceeded bound at node " << j << " for k = " << k;
      throw Error(ErrorCode::IntegratorDiverged, msg.str());
    }
  };

  Mat2 phi = Mat2::Identity();
  apply_mask(phi, columns);
  if (side == Side::Left) {
    field.phi[0] = phi;
    Mat2 g0 = node_gen(0);
    for (std::size_t j = 0; j < n_; ++j) {
      const Mat2 g1 = node_gen(j + 1);
      const Mat2 E = magnus_step(g0, mid_gen(j), g1, h_);
      const cplx ph = std::exp(kI * k * (p_[j + 1] - p_[j]));
      phi = E * phi;
      phi.col(0) *= ph;
      phi.col(1) /= ph;
      check(phi, j + 1);
      field.phi[j + 1] = phi;
      g0 = g1;
    }
  } else {
    field.phi[n_] = phi;
    Mat2 g0 = node_gen(n_);
    for (std::size_t j = n_; j-- > 0;) {
      const Mat2 g1 = node_gen(j);
      const Mat2 E = magnus_step(g0, mid_gen(j), g1, -h_);
      const cplx ph = std::exp(kI * k * (p_[j] - p_[j + 1]));
      phi = E * phi;
      phi.col(0) *= ph;
      phi.col(1) /= ph;
      check(phi, j);
      field.phi[j] = phi;
      g0 = g1;
    }
  }
  return field;
}

Mat2 JostSolver::solve_coarse_at_center(cplx k, Side side, Columns columns) const {
  if (std::abs(k) < options_.k_min) throw Error(ErrorCode::NearZeroK, "|k| below k_min");
  if (n_ % 4 != 0) {
    throw Error(ErrorCode::InvalidArgument, "coarse check needs a node count divisible by 4");
  }
  auto node_gen = [&](std::size_t j) { return generator(k, px_[j], m_[j], mx_[j]); };
  Mat2 phi = Mat2::Identity();
  apply_mask(phi, columns);
  if (side == Side::Left) {
    for (std::size_t j = 0; j < center_; j += 2) {
      const Mat2 E = magnus_step(node_gen(j), node_gen(j + 1), node_gen(j + 2), 2.0 * h_);
      const cplx ph = std::exp(kI * k * (p_[j + 2] - p_[j]));
      phi = E * phi;
      phi.col(0) *= ph;
      phi.col(1) /= ph;
    }
  } else {
    for (std::size_t j = n_; j > center_; j -= 2) {
      const Mat2 E = magnus_step(node_gen(j), node_gen(j - 1), node_gen(j - 2), -2.0 * h_);
      const cplx ph = std::exp(kI * k * (p_[j - 2] - p_[j]));
      phi = E * phi;
      phi.col(0) *= ph;
      phi.col(1) /= ph;
    }
  }
  return phi;
}

ScatteringPair JostSolver::coefficients(cplx k) const {
  const bool real_k = k.imag() == 0.0;
  const Columns left_cols = real_k ? Columns::Both : Columns::First;
  const Columns right_cols = real_k ? Columns::Both : Columns::Second;
  const Mat2 pm = solve(k, Side::Left, left_cols).phi[center_];
  const Mat2 pp = solve(k, Side::Right, right_cols).phi[center_];
  ScatteringPair out;
  out.a = pm(0, 0) * pp(1, 1) - pp(0, 1) * pm(1, 0);
  if (real_k) {
    out.b = (pp(0, 1) * pm(1, 1) - pm(0, 1) * pp(1, 1)) * std::exp(2.0 * kI * k * p_[center_]);
  } else {
    out.b = cplx(std::nan(""), std::nan(""));
  }
  return out;
}

double JostSolver::a_imag_axis(double kappa) const {
  return coefficients(cplx(0.0, kappa)).a.real();
}

JostField jost_solve(const PotentialProfile& profile, cplx k, Side side) {
  return JostSolver(profile).solve(k, side);
}

ScatteringPair scattering_coefficients(const PotentialProfile& profile, cplx k) {
  return JostSolver(profile).coefficients(k);
}

std::vector<double> symmetric_k_grid(double K_max, std::size_t nk) {
  if (!(K_max > 0.0) || nk < 8 || nk % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "k-grid needs K_max > 0 and an even count >= 8");
  }
  std::vector<double> k(nk);
  const double dk = 2.0 * K_max / static_cast<double>(nk);
  for (std::size_t j = 0; j < nk; ++j) k[j] = -K_max + (static_cast<double>(j) + 0.5) * dk;
  return k;
}

ScatteringData reflection(const JostSolver& solver, const ReflectionOptions& options) {
  ScatteringData d;
  d.K_max = options.K_max;
  d.k = symmetric_k_grid(options.K_max, options.nk);
  const std::size_t nk = d.k.size();
  if (d.k[nk / 2] < 1e-3) throw Error(ErrorCode::NearZeroK, "k-grid reaches below k_min");
  d.a.resize(nk);
  d.b.resize(nk);
  d.r.resize(nk);
  parallel_for(nk, options.threads, [&](std::size_t j) {
    const auto ab = solver.coefficients(d.k[j]);
    d.a[j] = ab.a;
    d.b[j] = ab.b;
    d.r[j] = ab.b / ab.a;
  });
  for (std::size_t j = 0; j < nk; ++j) {
    const double unimod = std::norm(d.a[j]) - std::norm(d.b[j]) - 1.0;
    const double sym = std::abs(d.r[nk - 1 - j] - std::conj(d.r[j]));
    if (std::abs(unimod) > options.tolerance || sym > options.tolerance) {
      std::ostringstream msg;
      msg << "at k = " << d.k[j] << ": |a|^2 - |b|^2 - 1 = " << unimod
          << ", |r(-k) - conj r(k)| = " << sym;
      throw Error(ErrorCode::SymmetryViolation, msg.str());
    }
  }
  d.a_half_i = solver.a_imag_axis(0.5);
  return d;
}

std::vector<double> find_eigenvalues(const JostSolver& solver, const EigenOptions& options) {
  const double lo = options.kappa_min;
  const double hi = 0.5 - options.kappa_min;
  const std::size_t m = std::max<std::size_t>(options.scan_points, 2);
  std::vector<double> kap(m), val(m);
  for (std::size_t i = 0; i < m; ++i) {
    kap[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
    val[i] = solver.a_imag_axis(kap[i]);
  }
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (val[i] == 0.0) {
      roots.push_back(kap[i]);
      continue;
    }
    if ((val[i] < 0.0) == (val[i + 1] < 0.0) || val[i + 1] == 0.0) continue;
    auto f = [&](double x) { return solver.a_imag_axis(x); };
    std::uintmax_t iters = 200;
    auto tol = [&](double a, double b) { return std::abs(b - a) <= 4e-16 * std::max(1.0, a); };
    const auto br = boost::math::tools::toms748_solve(f, kap[i], kap[i + 1], val[i], val[i + 1],
                                                      tol, iters);
    const double fa = std::abs(f(br.first));
    const double fb = std::abs(f(br.second));
    roots.push_back(fa <= fb ? br.first : br.second);
  }
  return roots;
}

std::vector<NormingResult> norming_constants(const JostSolver& solver,
                                             const std::vector<double>& poles,
                                             double residual_limit) {
  std::vector<NormingResult> out;
  const auto& p = solver.p_nodes();
  for (double kappa : poles) {
    const cplx k(0.0, kappa);
    const auto left = solver.solve(k, Side::Left, Columns::First);
    const auto right = solver.solve(k, Side::Right, Columns::Second);
    cplx num = 0.0;
    double den = 0.0;
    double zz = 0.0;
    std::vector<std::size_t> used;
    for (std::size_t j = 0; j < left.phi.size(); ++j) {
      const Eigen::Vector2cd w0 = left.phi[j].col(0);
      const Eigen::Vector2cd z = right.phi[j].col(1);
      if (w0.norm() <= 1e-3 || z.norm() <= 1e-3) continue;
      const Eigen::Vector2cd w = std::exp(2.0 * kappa * p[j]) * w0;
      num += w.dot(z);  // conj(w) . z
      den += w.squaredNorm();
      zz += z.squaredNorm();
      used.push_back(j);
    }
    if (used.empty() || den == 0.0) {
      throw Error(ErrorCode::DegenerateColumn, "no overlap between the Jost columns");
    }
    const cplx b = num / den;
    double res = 0.0;
    for (std::size_t j : used) {
      const Eigen::Vector2cd w = std::exp(2.0 * kappa * p[j]) * left.phi[j].col(0);
      res += (right.phi[j].col(1) - b * w).squaredNorm();
    }
    res = std::sqrt(res / zz);
    if (res > residual_limit) {
      std::ostringstream msg;
      msg << "proportionality residual " << res << " at kappa = " << kappa;
      throw Error(ErrorCode::DegenerateColumn, msg.str());
    }
    constexpr double dk = 1e-5;
    const double ap = (solver.a_imag_axis(kappa + dk) - solver.a_imag_axis(kappa - dk)) / (2.0 * dk);
    NormingResult nr;
    nr.b = b.real();
    nr.a_prime = ap;
    nr.c = b.real() / ap;
    nr.c_imag = b.imag() / ap;
    nr.residual = res;
    out.push_back(nr);
  }
  return out;
}

TraceReport trace_formula_check(const ScatteringData& data, double total_shift, double k_lo,
                                double k_hi) {
  TraceReport rep;
  const CauchyDensity density(data.k, log_modulus_density(data.r));
  rep.singular_order = density.mu();
  for (std::size_t j = 0; j < data.k.size(); ++j) {
    const double k = data.k[j];
    if (std::abs(k) < k_lo || std::abs(k) > k_hi) continue;
    cplx blaschke = 1.0;
    for (double kappa : data.poles) blaschke *= (k - kI * kappa) / (k + kI * kappa);
    const cplx a_trace = blaschke * std::exp(kI * density.boundary_plus(j));
    const double rel = std::abs(a_trace - data.a[j]) / std::abs(data.a[j]);
    rep.k.push_back(k);
    rep.rel_residual.push_back(rel);
    rep.max_rel_residual = std::max(rep.max_rel_residual, rel);
  }
  rep.half_i_residual = std::abs(data.a_half_i * std::exp(0.5 * total_shift) - 1.0);
  return rep;
}

cplx trace_formula_a(const ScatteringData& data, std::size_t node) {
  const CauchyDensity density(data.k, log_modulus_density(data.r));
  cplx blaschke = 1.0;
  const double k = data.k[node];
  for (double kappa : data.poles) blaschke *= (k - kI * kappa) / (k + kI * kappa);
  return blaschke * std::exp(kI * density.boundary_plus(node));
}

}  // namespace chlab
