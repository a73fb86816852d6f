#include <doctest.h>

#include <cmath>

#include "chlab/errors.hpp"
#include "chlab/io.hpp"
#include "chlab/pde.hpp"

using namespace chlab;

TEST_SUITE("pde") {
  TEST_CASE("vacuum stays at rest") {
    const PeriodicGrid grid{-50.0, 50.0, 256};
    const auto states = evolve(grid, std::vector<double>(256, 0.0), {0.0, 0.5});
    REQUIRE(states.size() == 2);
    for (double v : states[1].u) CHECK(v == 0.0);
  }

  TEST_CASE("snapshots land on the requested times") {
    const PeriodicGrid grid{-50.0, 50.0, 256};
    ProfileSpec spec;
    spec.A = 0.1;
    spec.w = 4.0;
    const auto u0 = sample_profile(spec, grid.nodes());
    PdeOptions opt;
    opt.dt = 0.01;
    std::vector<double> seen;
    const auto states = evolve(grid, u0, {0.0, 0.123, 0.5}, opt,
                               [&](const FieldState& s) { seen.push_back(s.t); });
    CHECK(seen == std::vector<double>{0.0, 0.123, 0.5});
    CHECK(states[2].t == 0.5);
  }

  TEST_CASE("conserved quantities stay put") {
    const PeriodicGrid grid{-100.0, 100.0, 1024};
    ProfileSpec spec;
    spec.A = 0.3;
    spec.w = 3.0;
    const auto states = evolve(grid, sample_profile(spec, grid.nodes()), {0.0, 2.0});
    const auto& a = states[0].ledger;
    const auto& b = states[1].ledger;
    CHECK(std::abs(b.q1 - a.q1) < 1e-9);
    CHECK(std::abs(b.q2 - a.q2) < 1e-9);
    CHECK(std::abs(b.q3 - a.q3) < 1e-9);
    CHECK(a.q1 == doctest::Approx(0.3 * 2.0 * 3.0).epsilon(1e-10));
  }

  TEST_CASE("one soliton is transported at its velocity") {
    const PeriodicGrid grid{-100.0, 100.0, 2048};
    ProfileSpec spec;
    spec.kind = ProfileSpec::Kind::Soliton;
    spec.spectrum = {{0.3}, {1.0}};
    const auto x = grid.nodes();
    const auto states = evolve(grid, sample_profile(spec, x), {0.0, 2.0});
    spec.t0 = 2.0;
    const auto exact = sample_profile(spec, x);
    double err = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) err = std::max(err, std::abs(states[1].u[j] - exact[j]));
    CHECK(err < 1e-6);
  }

  TEST_CASE("guards") {
    const PeriodicGrid grid{-50.0, 50.0, 256};
    std::vector<double> u(256, 0.0);
    PdeOptions big;
    big.dt = 1.0;
    try {
      evolve(grid, u, {0.0, 1.0}, big);
      FAIL("expected PreconditionViolated");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PreconditionViolated);
    }
    CHECK_THROWS_AS(evolve(grid, u, {1.0, 0.5}), Error);
    std::vector<double> spike(256, 0.0);
    spike[128] = -5.0;  // m + 1 < 0 at the spike
    try {
      ledger(grid, spike);
      FAIL("expected BlowUp");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BlowUp);
    }
    CHECK(cfl_limit(grid, u) == doctest::Approx(0.5 * grid.h() / 2.0));
  }
}
