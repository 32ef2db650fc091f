#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stringctl/friction.hpp"
#include "stringctl/reach.hpp"
#include "stringctl/sampling.hpp"

using namespace stringctl;

TEST_CASE("scalar resolvent branches") {
  const auto up = scalar_resolvent(2.0);
  CHECK(up.phi == 1.5);
  CHECK(up.v == 1.0);
  const auto down = scalar_resolvent(-0.75);
  CHECK(down.phi == -0.25);
  CHECK(down.v == -1.0);
  const auto dead = scalar_resolvent(0.3);
  CHECK(dead.phi == 0.0);
  CHECK(dead.v == doctest::Approx(0.6));
  const auto edge = scalar_resolvent(0.5);
  CHECK(edge.phi == 0.0);
  CHECK(edge.v == 1.0);
}

TEST_CASE("piecewise resolvent agrees with the scalar one everywhere") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PiecewiseLinear rhs = random_field(seed, 8, 1.5);
    const PiecewiseResolvent r = pw_resolvent(rhs);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> x(0.0, kTwoPi);
    for (int i = 0; i < 300; ++i) {
      const double p = x(rng);
      const ScalarResolvent s = scalar_resolvent(rhs(p));
      CHECK(r.phi(p) == doctest::Approx(s.phi).scale(1.0).epsilon(1e-12));
      CHECK(r.v(p) == doctest::Approx(s.v).scale(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("constant field two is stopped after two periods") {
  const PhiTrack track = solve_track(PiecewiseLinear::constant(2.0), 2.0 * kTwoPi);
  REQUIRE(track.intervals().size() == 2);
  CHECK(track.phi(1.0) == doctest::Approx(1.5));
  CHECK(track.control(1.0) == -1.0);
  CHECK(track.phi(kTwoPi + 1.0) == doctest::Approx(0.5));
  CHECK(track.control(kTwoPi + 1.0) == -1.0);
  const PiecewiseLinear end = flow_snapshot(track, 2.0 * kTwoPi);
  CHECK(sup_norm(end, SupNorm::kPlain) < 1e-12);

  const DecayReport r = decay_report(PiecewiseLinear::constant(2.0), 2.0 * kTwoPi, Problem::kStopMoving);
  CHECK(r.rho0 == doctest::Approx(4.0 * kPi));
  CHECK(r.rhoT == doctest::Approx(0.0).scale(1.0));
  CHECK(r.rate == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flow matches the characteristic solution") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PiecewiseLinear g = random_field(seed + 200, 7, 3.0);
    const double horizon = 3.5 * kTwoPi;
    const PhiTrack track = solve_track(g, horizon);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> when(0.0, horizon);
    std::uniform_real_distribution<double> where(0.0, kTwoPi);
    for (int i = 0; i < 20; ++i) {
      const double t = when(rng);
      const PiecewiseLinear snap = flow_snapshot(track, t);
      for (int j = 0; j < 20; ++j) {
        const double z = where(rng);
        CHECK(snap(z) == doctest::Approx(oracle::flow_value(g, z, t)).scale(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("flow is a semigroup") {
  const PiecewiseLinear g = random_field(31, 6, 2.5);
  const double s = 3.1;
  const double t = 8.4;
  const PiecewiseLinear direct = flow_map(g, s + t);
  const PiecewiseLinear composed = flow_map(flow_map(g, s), t);
  CHECK(sup_norm(direct - composed, SupNorm::kPlain) < 1e-10);
  CHECK(flow_map(g, 0.0)(1.0) == g(1.0));
}

TEST_CASE("track invariants hold on random fields") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PhiTrack track = solve_track(random_field(seed, 9, 4.0), 4.0 * kTwoPi);
    const TrackDiagnostics d = check_track(track);
    CHECK(d.max_residual < 1e-12);
    CHECK(d.max_abs_v <= 1.0 + 1e-12);
    CHECK(d.max_sign_mismatch < 1e-12);
    CHECK(d.max_phi_excess < 1e-12);
  }
}

TEST_CASE("feedback decays at rate one while the field stays large") {
  const PiecewiseLinear g = random_field(7, 5, 5.0);
  const DecayReport r = decay_report(g, 4.0 * kTwoPi, Problem::kStopMoving);
  CHECK(r.rate == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].second <= r.trace[i - 1].second);
}

TEST_CASE("open-loop controls decay no faster than feedback") {
  const PiecewiseLinear g = random_field(8, 5, 5.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PiecewiseLinear u = random_control(seed, 2.0 * kTwoPi, 12, ControlShape::kBangBang);
    CHECK(open_loop_decay(g, u, 2.0 * kTwoPi, Problem::kStopMoving).rate <= 1.0 + 1e-9);
  }
}

TEST_CASE("open-loop transport matches the formula pointwise") {
  const PiecewiseLinear g = random_field(90, 4, 1.0);
  const PiecewiseLinear u = random_control(91, 9.0, 6);
  const PiecewiseLinear field = apply_control(g, u, 9.0);
  for (double z : {0.1, 1.0, 2.5, 3.5, 5.0, 6.2}) {
    double expect = g(z + 9.0);
    for (int k = -3; k <= 0; ++k) {
      const double x = z + kTwoPi * k;
      if (x >= -9.0 && x < 0.0) expect += u(z + 9.0 + kTwoPi * k);
    }
    CHECK(field(z) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("argument checks") {
  const PiecewiseLinear g = PiecewiseLinear::constant(1.0);
  const PhiTrack track = solve_track(g, 5.0);
  CHECK_THROWS_AS(control_of(track, 5.0), std::out_of_range);
  CHECK_THROWS_AS(control_of(track, -0.1), std::out_of_range);
  CHECK(control_of(track, 4.9) == track.control(4.9));
  CHECK_THROWS_AS(solve_track(g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_track(PiecewiseLinear::constant(1.0, 3.0), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(flow_snapshot(track, 7.0), std::out_of_range);
  CHECK_THROWS_AS(apply_control(g, PiecewiseLinear::constant(1.5, 3.0, false), 3.0), std::invalid_argument);
  CHECK_THROWS_AS(apply_control(g, PiecewiseLinear::constant(0.5, 3.0, false), 4.0), std::invalid_argument);
}
