#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stringctl/reach.hpp"
#include "stringctl/sampling.hpp"

using namespace stringctl;

namespace {

double dense_support(const DualVector& xi, double horizon) {
  return oracle::midpoint(
      [&](double t) { return std::abs(oracle::trace(xi.phi(), xi.psi(), t)); }, 0.0, horizon, 2000000);
}

// (1/2π) ∫₀^{2π} ∫₀¹ |p(s) + φ₀ τ| dτ ds on a midpoint grid.
double dense_limit(const DualVector& xi) {
  std::vector<double> phi = xi.phi();
  const double drift = phi[0];
  phi[0] = 0.0;
  const std::size_t ns = 4000;
  const std::size_t nt = 400;
  double sum = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    const double s = kTwoPi * (i + 0.5) / ns;
    const double p = oracle::trace(phi, xi.psi(), s);
    for (std::size_t j = 0; j < nt; ++j) sum += std::abs(p + drift * (j + 0.5) / nt);
  }
  return sum / static_cast<double>(ns * nt);
}

}  // namespace

TEST_CASE("support of the full reachable set against dense quadrature") {
  for (const DualVector& xi : random_duals(5, 6, 101, DualKind::kFull)) {
    for (double horizon : {kTwoPi, 3.7, 4.0 * kPi}) {
      CHECK(support_full(xi, horizon) == doctest::Approx(dense_support(xi, horizon)).epsilon(1e-8));
    }
  }
}

TEST_CASE("support functions are sublinear") {
  const auto duals = random_duals(10, 5, 7, DualKind::kFull);
  for (std::size_t i = 0; i + 1 < duals.size(); ++i) {
    const double a = support_full(duals[i], 9.0);
    const double b = support_full(duals[i + 1], 9.0);
    CHECK(support_full(duals[i] + duals[i + 1], 9.0) <= a + b + 1e-12);
    CHECK(support_full(duals[i].scaled(-2.5), 9.0) == doctest::Approx(2.5 * a).epsilon(1e-13));
  }
}

TEST_CASE("constant dual ψ₀ = 1 supports [0, T] exactly") {
  const DualVector one({0.0}, {1.0});
  CHECK(support_full(one, 5.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(support_normalized(one, 5.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("reduced support needs zero modes and is periodic in T") {
  const DualVector full = random_duals(1, 4, 9, DualKind::kFull).front();
  CHECK_THROWS_AS(support_reduced(full, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(support_full(full, 0.0), std::invalid_argument);
  const DualVector xi = full.with_zero_modes_removed();
  const double one = support_reduced(xi, kTwoPi);
  CHECK(support_reduced(xi, 3.0 * kTwoPi) == doctest::Approx(3.0 * one).epsilon(1e-12));
  CHECK(limit_support_reduced(xi) == doctest::Approx(one / kTwoPi).epsilon(1e-14));
}

TEST_CASE("limit support function against a two-dimensional oracle") {
  for (const DualVector& xi : random_duals(4, 5, 55, DualKind::kFull)) {
    CHECK(limit_support_full(xi) == doctest::Approx(dense_limit(xi)).epsilon(1e-5));
  }
  const DualVector no_drift = random_duals(1, 5, 56, DualKind::kNoDrift).front();
  CHECK(limit_support_full(no_drift) ==
        doctest::Approx(support_full(no_drift, kTwoPi) / kTwoPi).epsilon(1e-12));
}

TEST_CASE("normalized support approaches the limit at rate 1/N") {
  const DualVector xi = random_duals(1, 3, 5, DualKind::kFull).front();
  const double limit = limit_support_full(xi);
  double prev = INFINITY;
  for (int n : {8, 16, 32, 64}) {
    const double err = std::abs(support_normalized(xi, kTwoPi * n) - limit);
    CHECK(err < prev);
    CHECK(err * n < 0.2);
    prev = err;
  }
}

TEST_CASE("rho for each problem") {
  const PiecewiseLinear two = PiecewiseLinear::constant(2.0);
  CHECK(rho_of_field(two, Problem::kStopMoving) == doctest::Approx(4.0 * kPi));
  CHECK(rho_of_field(two, Problem::kDamping) == 0.0);
  CHECK_THROWS_AS(rho_of_field(two, Problem::kCompleteStop), std::invalid_argument);
}

TEST_CASE("even states") {
  const PiecewiseLinear g = random_field(3, 7, 2.0);
  const StringState s = StringState::from_field(g);
  CHECK(sup_norm(s.g() - g, SupNorm::kPlain) < 1e-12);
  CHECK_THROWS_AS(StringState(PiecewiseLinear::constant(0.0), PiecewiseLinear::linear(0.0, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(StringState(PiecewiseLinear::constant(1.0), PiecewiseLinear::constant(0.0)),
                  std::invalid_argument);

  // f₀ = |x - π| - π/2 is continuous with an odd slope.
  const PiecewiseLinear f0(kTwoPi, true, {{0.0, kPi / 2.0, -1.0}, {kPi, -kPi / 2.0, 1.0}});
  const StringState tent = StringState::from_displacement(f0, PiecewiseLinear::constant(0.0));
  CHECK(sup_norm(tent.f0() - f0, SupNorm::kPlain) < 1e-12);
  CHECK_THROWS_AS(StringState::from_displacement(PiecewiseLinear::linear(0.0, 1.0),
                                                 PiecewiseLinear::constant(0.0)),
                  std::invalid_argument);
}

TEST_CASE("pairing equals the dense integral of f₁ξ₁ - (∂f₀/∂x)η and of g(-x)ζ(x)") {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const StringState s = StringState::from_field(random_field(seed + 50, 6, 1.5));
    const DualVector xi = random_duals(1, 6, seed, DualKind::kNoDrift).front();
    const DualProfile p(xi);
    const auto cuts = oracle::breakpoints(s.g(), 0.0, kTwoPi, true);
    const double direct = oracle::midpoint_pieces(
        [&](double x) { return s.f1()(x) * p.xi1(x) - s.f0_gradient()(x) * p.eta(x); }, cuts, 0.0,
        kTwoPi);
    const double transported =
        oracle::midpoint_pieces([&](double x) { return s.g()(-x) * p.zeta(x); }, cuts, 0.0, kTwoPi);
    CHECK(pairing(s, xi) == doctest::Approx(direct).epsilon(1e-8));
    CHECK(pairing(s, xi) == doctest::Approx(transported).epsilon(1e-8));
  }
  const StringState s = StringState::from_field(PiecewiseLinear::constant(1.0));
  CHECK_THROWS_AS(pairing(s, DualVector({1.0}, {0.0})), std::invalid_argument);
}

TEST_CASE("extremal state attains ρ·H and bounds every other pairing") {
  for (const DualVector& xi : random_duals(8, 6, 300, DualKind::kReduced)) {
    const StringState f = extremal_state(xi, Problem::kDamping);
    const double h = limit_support_reduced(xi);
    CHECK(rho_norm(f, Problem::kDamping) == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK(pairing(f, xi) == doctest::Approx(rho_norm(f, Problem::kDamping) * h).epsilon(1e-9));
  }
  CHECK_THROWS_AS(extremal_state(DualVector::zeros(2), Problem::kDamping), std::invalid_argument);
  CHECK_THROWS_AS(extremal_state(DualVector({0.0, 1.0}, {0.0}), Problem::kCompleteStop),
                  std::invalid_argument);
}

TEST_CASE("membership margins") {
  const DualVector xi = random_duals(1, 4, 17, DualKind::kReduced).front();
  const StringState f = extremal_state(xi, Problem::kStopMoving);
  const std::vector<DualVector> sample{xi};
  const ReachQuery q(Problem::kStopMoving, kTwoPi);
  CHECK(membership_margin(f, q, sample) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(membership_margin(f.scaled(10.0), q, sample) > 1.0);
  const StringState zero = StringState::from_field(PiecewiseLinear::constant(0.0));
  CHECK(membership_margin(zero, ReachQuery(Problem::kDamping, 3.0),
                          random_duals(20, 5, 1, DualKind::kReduced)) < 0.0);
  CHECK_THROWS_AS(membership_margin(zero, q, std::vector<DualVector>{}), std::invalid_argument);
  CHECK_THROWS_AS(membership_margin(zero, ReachQuery(Problem::kCompleteStop, 1.0), sample),
                  std::invalid_argument);
  CHECK_THROWS_AS(ReachQuery(Problem::kDamping, -1.0), std::invalid_argument);
}

TEST_CASE("random duals are reproducible and respect their kind") {
  const auto a = random_duals(3, 4, 9, DualKind::kReduced);
  const auto b = random_duals(3, 4, 9, DualKind::kReduced);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].phi() == b[i].phi());
    CHECK(a[i].reduced());
  }
  CHECK(random_duals(1, 4, 9, DualKind::kNoDrift).front().phi(0) == 0.0);
}

TEST_CASE("problem names") {
  CHECK(parse_problem("damping") == Problem::kDamping);
  CHECK(to_string(Problem::kStopMoving) == "stop-moving");
  CHECK_THROWS_AS(parse_problem("halt"), std::invalid_argument);
}

TEST_CASE("normalized support against dense quadrature") {
  for (const DualVector& xi : random_duals(3, 8, 77, DualKind::kFull)) {
    for (int n : {1, 4, 8}) {
      const double horizon = kTwoPi * n;
      std::vector<double> phi = xi.phi();
      const double drift = phi[0];
      phi[0] = 0.0;
      const double dense =
          oracle::midpoint(
              [&](double t) { return std::abs(oracle::trace(phi, xi.psi(), t) + drift * t / horizon); }, 0.0,
              horizon, 1000000 * static_cast<std::size_t>(n)) /
          horizon;
      CHECK(support_normalized(xi, horizon) == doctest::Approx(dense).epsilon(1e-9));
    }
  }
}
