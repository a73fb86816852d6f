#include "chlab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chlab/errors.hpp"
#include "chlab/spectral.hpp"

namespace chlab {

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> x(modes);
  for (std::size_t j = 0; j < modes; ++j) x[j] = x_min + static_cast<double>(j) * h();
  return x;
}

double cfl_limit(const PeriodicGrid& grid, const std::vector<double>& u) {
  double sup = 0.0;
  for (double v : u) sup = std::max(sup, std::abs(v));
  return 0.5 * grid.h() / std::max(1.0, sup + 2.0);
}

Ledger ledger(const PeriodicGrid& grid, const std::vector<double>& u) {
  const double P = grid.period();
  const auto ux = spectral_derivative(u, P, 1);
  const auto uxx = spectral_derivative(u, P, 2);
  Ledger l;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double mp1 = u[j] - uxx[j] + 1.0;
    if (!(mp1 > 0.0)) {
      std::ostringstream msg;
      msg << "m + 1 = " << mp1 << " at node " << j;
      throw Error(ErrorCode::BlowUp, msg.str());
    }
    l.q1 += u[j];
    l.q2 += u[j] * u[j] + ux[j] * ux[j];
    l.q3 += std::sqrt(mp1) - 1.0;
  }
  const double h = grid.h();
  l.q1 *= h;
  l.q2 *= h;
  l.q3 *= h;
  return l;
}

namespace {

/// Right-hand side in Fourier space for the nonlocal form of the equation.
class ChOperator {
 public:
  ChOperator(const PeriodicGrid& grid, double blowup)
      : fft_(grid.modes), k_(half_wavenumbers(grid.modes, grid.period())), blowup_(blowup) {
    const std::size_t ns = fft_.spectrum_size();
    mask_.assign(ns, 1.0);
    const double cutoff = static_cast<double>(grid.modes) / 3.0;
    for (std::size_t j = 0; j < ns; ++j) {
      if (static_cast<double>(j) > cutoff) mask_[j] = 0.0;
    }
    u_.resize(grid.modes);
    ux_.resize(grid.modes);
    w1_.resize(grid.modes);
    w2_.resize(grid.modes);
    s1_.resize(ns);
    s2_.resize(ns);
    tmp_.resize(ns);
  }

  std::size_t spectrum_size() const { return fft_.spectrum_size(); }
  const RealFft& fft() const { return fft_; }

  /// Returns sup|u| of the stage for the blow-up guard.
  double apply(const std::vector<cplx>& uh, std::vector<cplx>& out) {
    const std::size_t n = u_.size();
    const std::size_t ns = uh.size();
    fft_.inverse(uh, u_);
    for (std::size_t j = 0; j < ns; ++j) tmp_[j] = cplx(0.0, k_[j]) * uh[j];
    if (n % 2 == 0) tmp_[ns - 1] = 0.0;
    fft_.inverse(tmp_, ux_);
    double sup = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sup = std::max(sup, std::abs(u_[j]));
      w1_[j] = u_[j] * ux_[j];
      w2_[j] = u_[j] * u_[j] + 0.5 * ux_[j] * ux_[j];
    }
    if (!(sup <= blowup_)) {
      std::ostringstream msg;
      msg << "sup|u| = " << sup;
      throw Error(ErrorCode::BlowUp, msg.str());
    }
    fft_.forward(w1_, s1_);
    fft_.forward(w2_, s2_);
    for (std::size_t j = 0; j < ns; ++j) {
      const cplx ik(0.0, k_[j]);
      const double helm = 1.0 / (1.0 + k_[j] * k_[j]);
      out[j] = -mask_[j] * (s1_[j] + ik * helm * s2_[j]) - ik * helm * 2.0 * uh[j];
    }
    if (n % 2 == 0) out[ns - 1] = 0.0;
    return sup;
  }

 private:
  RealFft fft_;
  std::vector<double> k_;
  std::vector<double> mask_;
  double blowup_;
  std::vector<double> u_, ux_, w1_, w2_;
  std::vector<cplx> s1_, s2_, tmp_;
};

}  // namespace

std::vector<FieldState> evolve(const PeriodicGrid& grid, std::vector<double> u0,
                               const std::vector<double>& snapshot_times,
                               const PdeOptions& options,
                               const std::function<void(const FieldState&)>& on_snapshot) {
  if (u0.size() != grid.modes || grid.modes < 16 || grid.modes % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "initial data must match an even mode count >= 16");
  }
  if (!(options.dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    if (snapshot_times[i] < 0.0 || (i > 0 && snapshot_times[i] <= snapshot_times[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "snapshot times must be ascending and >= 0");
    }
  }
  const double limit = cfl_limit(grid, u0);
  if (options.dt > limit) {
    std::ostringstream msg;
    msg << "dt = " << options.dt << " exceeds the CFL bound " << limit;
    throw Error(ErrorCode::PreconditionViolated, msg.str());
  }

  ChOperator op(grid, options.blowup);
  const std::size_t ns = op.spectrum_size();
  std::vector<cplx> uh(ns), k1(ns), k2(ns), k3(ns), k4(ns), stage(ns);
  op.fft().forward(u0, uh);

  std::vector<FieldState> out;
  std::vector<double> u(grid.modes);
  auto snapshot = [&](double t) {
    op.fft().inverse(uh, u);
    FieldState s;
    s.t = t;
    s.grid = grid;
    s.u = u;
    s.ledger = ledger(grid, u);
    if (on_snapshot) on_snapshot(s);
    out.push_back(std::move(s));
  };

  double t = 0.0;
  std::size_t steps = 0;
  for (double target : snapshot_times) {
    while (target - t > 1e-12) {
      const double dt = std::min(options.dt, target - t);
      op.apply(uh, k1);
      for (std::size_t j = 0; j < ns; ++j) stage[j] = uh[j] + 0.5 * dt * k1[j];
      op.apply(stage, k2);
      for (std::size_t j = 0; j < ns; ++j) stage[j] = uh[j] + 0.5 * dt * k2[j];
      op.apply(stage, k3);
      for (std::size_t j = 0; j < ns; ++j) stage[j] = uh[j] + dt * k3[j];
      op.apply(stage, k4);
      for (std::size_t j = 0; j < ns; ++j) {
        uh[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      }
      // Landing exactly on the target avoids a sliver step from rounding.
      t = (dt == target - t) ? target : t + dt;
      if (++steps % options.check_every == 0) {
        op.fft().inverse(uh, u);
        (void)ledger(grid, u);
      }
    }
    t = target;
    snapshot(t);
  }
  return out;
}

}  // namespace chlab
