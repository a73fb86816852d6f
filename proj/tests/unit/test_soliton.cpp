#include <doctest.h>

#include <cmath>

#include "chlab/errors.hpp"
#include "chlab/io.hpp"
#include "chlab/potential.hpp"
#include "chlab/soliton.hpp"
#include "chlab/spectral.hpp"

using namespace chlab;

namespace {

ModelData exact_model(DiscreteSpectrum s) {
  s.normalize();
  auto m = reflectionless_model(s);
  m.log_shift = -2.0 * std::log(s.a_half_i());
  return m;
}

/// Residual of the travelling-wave reduction of
/// u_t - u_xxt + 2u_x + 3u u_x = 2u_x u_xx + u u_xxx for u = phi(x - vt).
double travelling_wave_residual(const std::vector<double>& u, double period, double v) {
  const auto d1 = spectral_derivative(u, period, 1);
  const auto d2 = spectral_derivative(u, period, 2);
  const auto d3 = spectral_derivative(u, period, 3);
  double r = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double lhs = -v * d1[j] + v * d3[j] + 2.0 * d1[j] + 3.0 * u[j] * d1[j];
    r = std::max(r, std::abs(lhs - 2.0 * d1[j] * d2[j] - u[j] * d3[j]));
  }
  return r;
}

}  // namespace

TEST_SUITE("soliton") {
  TEST_CASE("spectrum normalization") {
    DiscreteSpectrum s{{0.35, 0.2}, {2.0, 1.0}};
    s.normalize();
    CHECK(s.poles == std::vector<double>{0.2, 0.35});
    CHECK(s.constants == std::vector<double>{1.0, 2.0});
    CHECK(s.a_half_i() == doctest::Approx(0.3 / 0.7 * 0.15 / 0.85));
    DiscreteSpectrum bad{{0.6}, {1.0}};
    CHECK_THROWS_AS(bad.normalize(), Error);
    DiscreteSpectrum dup{{0.2, 0.2}, {1.0, 1.0}};
    CHECK_THROWS_AS(dup.normalize(), Error);
  }

  TEST_CASE("empty data reconstructs the vacuum") {
    const auto m = exact_model({});
    const auto p = reconstruct(m, 3.0, 2.0);
    CHECK(p.u == 0.0);
    CHECK(p.x == doctest::Approx(3.0));
  }

  TEST_CASE("one soliton solves the travelling-wave equation") {
    ProfileSpec spec;
    spec.kind = ProfileSpec::Kind::Soliton;
    spec.spectrum = {{0.3}, {1.0}};
    const auto g = SpatialGrid::make_uniform(60.0, 1024);
    const auto u = sample_profile(spec, g.nodes);
    CHECK(*std::max_element(u.begin(), u.end()) > 0.5);
    CHECK(travelling_wave_residual(u, g.period(), soliton_velocity(0.3)) < 1e-7);
    // A wrong speed leaves a visible residual.
    CHECK(travelling_wave_residual(u, g.period(), 3.0) > 1e-3);
  }

  TEST_CASE("one soliton translates rigidly at its velocity") {
    const auto m = exact_model({{0.3}, {1.0}});
    const double v = soliton_velocity(0.3);
    for (double x : {-4.0, 0.0, 2.5}) {
      CHECK(u_at_x(m, x + v * 7.0, 7.0) == doctest::Approx(u_at_x(m, x, 0.0)).epsilon(1e-9));
    }
  }

  TEST_CASE("model problem symmetries and real reconstruction") {
    const auto m = exact_model({{0.2, 0.35}, {1.0, 1.0}});
    for (double y : {-20.0, 0.0, 30.0}) {
      const auto rc = solve_residue_system(m, y, 5.0);
      CHECK(rc.condition < 1e12);
      const auto p = reconstruct(m, y, 5.0);
      CHECK(std::abs(p.u_imag) < 1e-10);
      CHECK(std::abs(p.x_imag) < 1e-10);
    }
  }

  TEST_CASE("x(y) is increasing and u tends to zero far away") {
    const auto m = exact_model({{0.2, 0.35}, {1.0, 1.0}});
    const auto sol = sample_solution(m, 10.0, -40.0, 100.0, 801);
    for (std::size_t i = 1; i < sol.x.size(); ++i) CHECK(sol.x[i] > sol.x[i - 1]);
    CHECK(std::abs(sol.u.front()) < 1e-6);
    CHECK(std::abs(sol.u.back()) < 1e-6);
    CHECK(std::abs(sol.x.back() - sol.y.back()) < 1e-6);
    const double xq = sol.x[400];
    CHECK(y_at_x(m, xq, 10.0) == doctest::Approx(sol.y[400]).epsilon(1e-9));
  }

  TEST_CASE("x(y) spans the total shift -2 ln a(i/2)") {
    DiscreteSpectrum s{{0.3}, {1.0}};
    const auto m = exact_model(s);
    const double lo = reconstruct(m, -60.0, 0.0).x + 60.0;
    const double hi = reconstruct(m, 60.0, 0.0).x - 60.0;
    CHECK(hi - lo == doctest::Approx(2.0 * std::log(s.a_half_i())).epsilon(1e-8));
  }

  TEST_CASE("on its own ray the approximant of a single soliton is exact") {
    DiscreteSpectrum s{{0.3}, {1.0}};
    const auto m = exact_model(s);
    const double v = soliton_velocity(0.3);
    const auto approx = asymptotic_approximant(s, v, nullptr, s.a_half_i());
    CHECK(approx.model.poles.size() == 1);
    for (double y : {-3.0, 0.0, 4.0}) {
      const auto a = reconstruct(approx.model, v * 20.0 + y, 20.0);
      const auto e = reconstruct(m, v * 20.0 + y, 20.0);
      CHECK(a.u == doctest::Approx(e.u).epsilon(1e-12));
      CHECK(a.x == doctest::Approx(e.x).epsilon(1e-12));
    }
  }

  TEST_CASE("two-soliton approximant error shrinks with t on a soliton ray") {
    DiscreteSpectrum s{{0.2, 0.35}, {1.0, 1.0}};
    s.normalize();
    const auto m = exact_model(s);
    const double v = soliton_velocity(0.35);
    const auto approx = asymptotic_approximant(s, v, nullptr, s.a_half_i());
    auto err = [&](double t) {
      double e = 0.0;
      for (double dy : {-2.0, 0.0, 2.0}) {
        const double x = reconstruct(m, v * t + dy, t).x;
        e = std::max(e, std::abs(u_at_x(approx.model, x, t) - u_at_x(m, x, t)));
      }
      return e;
    };
    const double e10 = err(10.0), e40 = err(40.0);
    CHECK(e40 < 1e-4);
    CHECK(e40 < e10);
  }

  TEST_CASE("T(k) has a simple pole at each Delta+ pole") {
    const std::vector<double> poles{0.2, 0.35};
    const auto part = pole_partition(poles, 3.0);
    const auto tf = t_factor(cplx(0.1, 0.1), 3.0, poles, part, nullptr);
    CHECK(std::isfinite(std::abs(tf.value)));
    CHECK_THROWS_AS(t_factor(cplx(0.0, 0.2), 3.0, poles, part, nullptr), Error);
  }
}
