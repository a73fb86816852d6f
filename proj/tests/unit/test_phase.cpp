#include <doctest.h>

#include <cmath>

#include "chlab/errors.hpp"
#include "chlab/phase.hpp"

using namespace chlab;

TEST_SUITE("phase") {
  TEST_CASE("theta and its derivative match finite differences") {
    const double xi = 0.7;
    for (const cplx k : {cplx(0.3, 0.1), cplx(-1.2, 0.4), cplx(2.0, -0.3)}) {
      const double h = 1e-6;
      const cplx fd = (theta(k + h, xi) - theta(k - h, xi)) / (2.0 * h);
      CHECK(std::abs(theta_prime(k, xi) - fd) < 1e-7);
      CHECK(im_theta(k, xi) == doctest::Approx(theta(k, xi).imag()).epsilon(1e-12));
    }
    // theta(k) = k xi - k / (2 k^2 + 1/2).
    CHECK(std::abs(theta(cplx(1.0, 0.0), 2.0) - cplx(2.0 - 1.0 / 2.5, 0.0)) < 1e-14);
  }

  TEST_CASE("theta has poles at k = +-i/2") {
    CHECK_THROWS_AS(theta(cplx(0.0, 0.5), 1.0), Error);
  }

  TEST_CASE("soliton velocity") {
    CHECK(soliton_velocity(0.3) == doctest::Approx(3.125));
    CHECK(soliton_velocity(0.0) == doctest::Approx(2.0));
  }

  TEST_CASE("regions and stationary point counts") {
    CHECK(classify_region(-0.5) == Region::LeftNoPoints);
    CHECK(classify_region(-0.125) == Region::FourPoints);
    CHECK(classify_region(1.0) == Region::TwoPoints);
    CHECK(classify_region(3.0) == Region::RightNoPoints);
    CHECK(classify_region(-0.25) == Region::BoundaryMinusQuarter);
    CHECK(classify_region(0.0) == Region::BoundaryZero);
    CHECK(classify_region(2.0) == Region::BoundaryTwo);
    CHECK(stationary_points(-0.5).empty());
    CHECK(stationary_points(-0.125).size() == 4);
    CHECK(stationary_points(1.0).size() == 2);
    CHECK(stationary_points(3.0).empty());
    CHECK(is_open_no_point_region(Region::LeftNoPoints));
    CHECK_FALSE(is_open_no_point_region(Region::BoundaryTwo));
  }

  TEST_CASE("stationary points are roots of theta' and agree with the scan") {
    for (double xi : {-0.2, -0.05, 0.5, 1.9}) {
      const auto fast = stationary_points(xi);
      const auto scan = stationary_points_scan(xi, 10.0, 100'000);
      REQUIRE(fast.size() == scan.size());
      for (std::size_t i = 0; i < fast.size(); ++i) {
        CHECK(std::abs(theta_prime(cplx(fast[i], 0.0), xi)) < 1e-12);
        CHECK(fast[i] == doctest::Approx(scan[i]).epsilon(1e-9));
      }
      for (std::size_t i = 1; i < fast.size(); ++i) CHECK(fast[i] < fast[i - 1]);
    }
  }

  TEST_CASE("boundary rays: tangency and merge") {
    const auto t = stationary_points(-0.25);
    REQUIRE_FALSE(t.empty());
    for (double k : t) CHECK(std::abs(k) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-8));
    const auto m = stationary_points(2.0);
    REQUIRE_FALSE(m.empty());
    for (double k : m) CHECK(std::abs(k) < 1e-8);
  }

  TEST_CASE("admissible angles keep the sector signs") {
    for (double xi : {-50.0, -1.0, -0.3, 2.01, 3.0, 100.0}) {
      const double phi = admissible_angle(xi);
      CHECK(phi > 0.0);
      const auto rep = sector_sign_check(xi, phi, 2000);
      CHECK(rep.samples > 0);
      CHECK(rep.worst_margin > 0.0);
    }
    CHECK(admissible_angle(-0.3) == doctest::Approx(0.242755).epsilon(1e-5));
    CHECK(admissible_angle(3.0) == doctest::Approx(1.010006).epsilon(1e-5));
    CHECK_THROWS_AS(admissible_angle(1.0), Error);
  }

  TEST_CASE("a too wide sector fails the sign check") {
    CHECK_THROWS_AS(sector_sign_check(-0.3, 1.2, 2000), Error);
  }

  TEST_CASE("poles split by Im theta(i kappa) = kappa (xi - v)") {
    const std::vector<double> poles{0.2, 0.35};
    const double v0 = soliton_velocity(0.2), v1 = soliton_velocity(0.35);
    const auto on_slow = pole_partition(poles, v0);
    CHECK(on_slow.lambda_set == std::vector<std::size_t>{0});
    CHECK(on_slow.delta_minus == std::vector<std::size_t>{1});
    REQUIRE(on_slow.rho0.has_value());
    CHECK(*on_slow.rho0 == doctest::Approx(0.35 * (v1 - v0)));
    const auto between = pole_partition(poles, 3.0);
    CHECK(between.delta_plus == std::vector<std::size_t>{0});
    CHECK(between.delta_minus == std::vector<std::size_t>{1});
    CHECK(between.im_theta[0] == doctest::Approx(0.2 * (3.0 - v0)));
    CHECK(*between.rho0 == doctest::Approx(std::min(0.2 * (3.0 - v0), 0.35 * (v1 - 3.0))));
  }

  TEST_CASE("geometry bundles region, points and angle") {
    const auto g = build_phase_geometry({0.3}, 3.0);
    CHECK(g.region == Region::RightNoPoints);
    CHECK(g.phi.has_value());
    const auto g2 = build_phase_geometry({0.3}, 1.0);
    CHECK(g2.stationary.size() == 2);
    CHECK_FALSE(g2.phi.has_value());
  }
}
