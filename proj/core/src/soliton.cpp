#include "chlab/soliton.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <sstream>

#include "chlab/errors.hpp"
#include "chlab/numerics.hpp"

namespace chlab {

namespace {

const cplx kI(0.0, 1.0);
const cplx kHalfI(0.0, 0.5);

bool uses_real_line(double xi) { return xi > 2.0; }

Eigen::Matrix2cd sigma1_conj(const Eigen::Matrix2cd& M) {
  Eigen::Matrix2cd S;
  S << M(1, 1), M(1, 0), M(0, 1), M(0, 0);
  return S;
}

}  // namespace

void DiscreteSpectrum::normalize() {
  if (poles.size() != constants.size()) {
    throw Error(ErrorCode::InvalidArgument, "poles and norming constants differ in length");
  }
  std::vector<std::size_t> idx(poles.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return poles[a] < poles[b]; });
  std::vector<double> p, c;
  for (auto i : idx) {
    if (!(poles[i] > 0.0 && poles[i] < 0.5)) {
      throw Error(ErrorCode::InvalidArgument, "pole kappa must lie in (0, 1/2)");
    }
    if (!p.empty() && std::abs(poles[i] - p.back()) < 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "poles must be distinct");
    }
    p.push_back(poles[i]);
    c.push_back(constants[i]);
  }
  poles = std::move(p);
  constants = std::move(c);
}

double DiscreteSpectrum::a_half_i() const {
  double a = 1.0;
  for (double k : poles) a *= (0.5 - k) / (0.5 + k);
  return a;
}

ModelData reflectionless_model(const DiscreteSpectrum& spectrum) {
  ModelData m;
  m.poles = spectrum.poles;
  m.constants.assign(spectrum.constants.begin(), spectrum.constants.end());
  m.log_shift = -2.0 * std::log(spectrum.a_half_i());
  return m;
}

CauchyDensity reflection_density(const ScatteringData& data) {
  return CauchyDensity(data.k, log_modulus_density(data.r));
}

cplx delta_factor(cplx k, double xi, const CauchyDensity& density) {
  if (!uses_real_line(xi)) return 1.0;
  if (std::abs(k.imag()) < 2.0 * density.step()) {
    std::ostringstream msg;
    msg << "k = " << k << " is within two grid steps of the real line";
    throw Error(ErrorCode::ContourCollision, msg.str());
  }
  return std::exp(-kI * density.transform(k));
}

TFactor t_factor(cplx k, double xi, const std::vector<double>& poles,
                 const PolePartition& partition, const CauchyDensity* density) {
  auto blaschke = [&](cplx z) {
    cplx b = 1.0;
    for (auto n : partition.delta_plus) {
      const cplx kn(0.0, poles[n]);
      if (std::abs(z - kn) < 1e-12) {
        throw Error(ErrorCode::PoleQuery, "T is evaluated at one of its poles");
      }
      b *= (z + kn) / (z - kn);
    }
    return b;
  };
  TFactor f;
  const bool line = density != nullptr && uses_real_line(xi);
  f.J0 = line ? delta_factor(kHalfI, xi, *density) : cplx(1.0);
  f.J1 = line ? -kI * density->transform_derivative(kHalfI) : cplx(0.0);
  f.value_at_half_i = blaschke(kHalfI) * f.J0;
  f.value = blaschke(k) * (line ? delta_factor(k, xi, *density) : cplx(1.0));
  return f;
}

ModifiedSpectrum modified_data(const DiscreteSpectrum& spectrum, double xi,
                               const CauchyDensity* density, const PolePartition& partition,
                               ModifiedConvention convention) {
  ModifiedSpectrum ms;
  ms.base = spectrum;
  ms.xi = xi;
  const std::size_t n = spectrum.poles.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double kap = spectrum.poles[i];
    const cplx d = density ? delta_factor(cplx(0.0, kap), xi, *density) : cplx(1.0);
    double extra = 1.0;
    for (auto m : partition.delta_plus) {
      if (m == i) continue;
      const double km = spectrum.poles[m];
      extra *= (kap + km) / (kap - km);
    }
    ms.delta_values.push_back(d);
    ms.blaschke_extras.push_back(extra);
    ms.c_tilde.push_back(spectrum.constants[i] * std::pow(d, convention.delta_power) *
                         std::pow(extra, convention.blaschke_power));
  }
  return ms;
}

ResidueCoefficients solve_residue_system(const ModelData& data, double y, double t) {
  const std::size_t n = data.poles.size();
  ResidueCoefficients rc;
  rc.alpha = rc.beta = rc.gamma = rc.zeta = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
  if (n == 0) return rc;
  if (data.constants.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "model data needs one constant per pole");
  }

  // C_n = i c_n exp(2 kappa_n (y - v_n t)) = rho_n exp(E_n) with |rho_n| = 1.
  std::vector<cplx> rho(n);
  std::vector<double> E(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double kap = data.poles[i];
    const cplx c = kI * data.constants[i];
    const double mag = std::abs(c);
    rho[i] = mag > 0.0 ? c / mag : cplx(1.0);
    E[i] = (mag > 0.0 ? std::log(mag) : -std::numeric_limits<double>::infinity()) +
           2.0 * kap * (y - soliton_velocity(kap) * t);
  }

  const auto N = static_cast<Eigen::Index>(n);
  // Unknowns (p, q) with p_n - C_n sum_h q_h/(k_n + k_h) = C_n * f and
  // q_n - C_n sum_h p_h/(k_n + k_h) = C_n * g. Rows with |C_n| > 1 are divided
  // by C_n so that no entry overflows.
  auto solve_block = [&](double f, double g, Eigen::VectorXcd& p, Eigen::VectorXcd& q) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * N);
    for (Eigen::Index r = 0; r < N; ++r) {
      const auto ri = static_cast<std::size_t>(r);
      const bool scaled = E[ri] > 0.0;
      const cplx diag = scaled ? std::exp(-E[ri]) / rho[ri] : cplx(1.0);
      const cplx coef = scaled ? cplx(1.0) : rho[ri] * std::exp(E[ri]);
      for (Eigen::Index h = 0; h < N; ++h) {
        const cplx K = 1.0 / cplx(0.0, data.poles[ri] + data.poles[static_cast<std::size_t>(h)]);
        A(r, N + h) = -coef * K;
        A(N + r, h) = -coef * K;
      }
      A(r, r) = diag;
      A(N + r, N + r) = diag;
      rhs(r) = coef * f;
      rhs(N + r) = coef * g;
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const double rc_est = lu.rcond();
    const double cond = rc_est > 0.0 ? 1.0 / rc_est : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e12)) {
      std::ostringstream msg;
      msg << "residue system condition estimate " << cond << " at y = " << y << ", t = " << t;
      throw Error(ErrorCode::SingularSystem, msg.str());
    }
    rc.condition = std::max(rc.condition, cond);
    const Eigen::VectorXcd sol = lu.solve(rhs);
    p = sol.head(N);
    q = sol.tail(N);
  };
  solve_block(1.0, 0.0, rc.beta, rc.gamma);
  solve_block(0.0, -1.0, rc.alpha, rc.zeta);

  // Gate on both symmetries of the model problem.
  for (const cplx k : {cplx(0.71, 0.29), cplx(-0.43, 1.13), cplx(1.7, -0.6)}) {
    const auto M = evaluate_M_Lambda(rc, data, k).M;
    const auto Mr = evaluate_M_Lambda(rc, data, -std::conj(k)).M;
    const auto Mn = evaluate_M_Lambda(rc, data, -k).M;
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    const double e1 = (M - Mr.conjugate()).cwiseAbs().maxCoeff() / scale;
    const double e2 = (Mn - sigma1_conj(M)).cwiseAbs().maxCoeff() / scale;
    if (e1 > 1e-8 || e2 > 1e-8) {
      std::ostringstream msg;
      msg << "M^Lambda symmetry defect " << std::max(e1, e2) << " at y = " << y << ", t = " << t;
      throw Error(ErrorCode::SymmetryViolation, msg.str());
    }
  }
  return rc;
}

MValue evaluate_M_Lambda(const ResidueCoefficients& coeffs, const ModelData& data, cplx k) {
  MValue v;
  v.M = Eigen::Matrix2cd::Identity();
  v.dM = Eigen::Matrix2cd::Zero();
  for (std::size_t i = 0; i < data.poles.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const cplx kn(0.0, data.poles[i]);
    const cplx dp = k + kn;
    const cplx dm = k - kn;
    if (std::abs(dp) < 1e-12 || std::abs(dm) < 1e-12) {
      throw Error(ErrorCode::PoleQuery, "M^Lambda evaluated at a pole");
    }
    v.M(0, 0) += coeffs.gamma(ii) / dp;
    v.M(1, 0) += coeffs.zeta(ii) / dp;
    v.M(0, 1) += coeffs.beta(ii) / dm;
    v.M(1, 1) += coeffs.alpha(ii) / dm;
    v.dM(0, 0) -= coeffs.gamma(ii) / (dp * dp);
    v.dM(1, 0) -= coeffs.zeta(ii) / (dp * dp);
    v.dM(0, 1) -= coeffs.beta(ii) / (dm * dm);
    v.dM(1, 1) -= coeffs.alpha(ii) / (dm * dm);
  }
  return v;
}

PointValue reconstruct(const ModelData& data, double y, double t) {
  PointValue pv;
  if (data.poles.empty()) {
    pv.x = y + data.log_shift;
    return pv;
  }
  const auto rc = solve_residue_system(data, y, t);
  const auto mv = evaluate_M_Lambda(rc, data, kHalfI);
  const cplx N1 = mv.M(0, 0) + mv.M(1, 0);
  const cplx N2 = mv.M(0, 1) + mv.M(1, 1);
  const cplx d1 = mv.dM(0, 0) + mv.dM(1, 0);
  const cplx d2 = mv.dM(0, 1) + mv.dM(1, 1);
  if (std::abs(N1 * N2) < 1e-14) {
    std::ostringstream msg;
    msg << "|N1 N2| = " << std::abs(N1 * N2) << " at y = " << y << ", t = " << t;
    throw Error(ErrorCode::ZeroDenominator, msg.str());
  }
  const cplx u = (d1 / N1 + d2 / N2) / (2.0 * kI);
  const cplx lr = std::log(N1 / N2);
  pv.u = u.real();
  pv.u_imag = u.imag();
  pv.x = y + lr.real() + data.log_shift;
  pv.x_imag = lr.imag();
  return pv;
}

ParametricSolution sample_solution(const ModelData& data, double t, double y0, double y1,
                                   std::size_t n, int threads) {
  if (n < 4 || !(y1 > y0)) {
    throw Error(ErrorCode::InvalidArgument, "sample window needs y1 > y0 and >= 4 samples");
  }
  ParametricSolution s;
  s.t = t;
  s.y.resize(n);
  s.x.resize(n);
  s.u.resize(n);
  const double dy = (y1 - y0) / static_cast<double>(n - 1);
  parallel_for(n, threads, [&](std::size_t i) {
    s.y[i] = y0 + dy * static_cast<double>(i);
    const auto pv = reconstruct(data, s.y[i], t);
    s.x[i] = pv.x;
    s.u[i] = pv.u;
  });
  for (std::size_t i = 1; i < n; ++i) {
    if (!(s.x[i] > s.x[i - 1])) {
      std::ostringstream msg;
      msg << "x(y) not increasing near y = " << s.y[i];
      throw Error(ErrorCode::NonMonotoneX, msg.str());
    }
  }
  const MonotoneCurve curve(s.x, s.u);
  s.x_uniform.resize(n);
  s.u_on_x.resize(n);
  const double dx = (s.x.back() - s.x.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    s.x_uniform[i] = s.x.front() + dx * static_cast<double>(i);
    s.u_on_x[i] = curve(s.x_uniform[i]);
  }
  return s;
}

double y_at_x(const ModelData& data, double x, double t) {
  auto f = [&](double y) { return reconstruct(data, y, t).x - x; };
  const double guess = x - data.log_shift;
  double step = 1.0;
  double lo = guess - step, hi = guess + step;
  double flo = f(lo), fhi = f(hi);
  for (int it = 0; it < 60 && (flo > 0.0) == (fhi > 0.0); ++it) {
    step *= 2.0;
    if (flo > 0.0) {
      lo -= step;
      flo = f(lo);
    } else {
      hi += step;
      fhi = f(hi);
    }
  }
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw Error(ErrorCode::NonMonotoneX, "could not bracket y for the requested x");
  }
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::max(1.0, std::abs(a)); };
  const auto br = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (br.first + br.second);
}

double u_at_x(const ModelData& data, double x, double t) {
  if (data.poles.empty()) return 0.0;
  return reconstruct(data, y_at_x(data, x, t), t).u;
}

Approximant asymptotic_approximant(const DiscreteSpectrum& spectrum, double xi,
                                   const CauchyDensity* density, double a_half_i, double delta,
                                   ModifiedConvention convention) {
  Approximant ap;
  ap.geometry = build_phase_geometry(spectrum.poles, xi, delta);
  const auto& part = ap.geometry.partition;
  ap.modified = modified_data(spectrum, xi, density, part, convention);
  const TFactor tf = t_factor(kHalfI, xi, spectrum.poles, part, density);
  ap.T_half_i = tf.value_at_half_i;
  for (auto n : part.lambda_set) {
    ap.model.poles.push_back(spectrum.poles[n]);
    ap.model.constants.push_back(ap.modified.c_tilde[n]);
  }
  ap.model.log_shift = -2.0 * std::log(std::abs(ap.T_half_i)) - 2.0 * std::log(a_half_i);
  return ap;
}

}  // namespace chlab
