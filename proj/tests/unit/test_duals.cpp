#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stringctl/duals.hpp"
#include "stringctl/pwlin.hpp"
#include "stringctl/quadrature.hpp"
#include "stringctl/reach.hpp"

using namespace stringctl;

TEST_CASE("dual vectors pad, validate and scale") {
  const DualVector xi({1.0, 2.0, 3.0}, {4.0});
  CHECK(xi.order() == 2);
  CHECK(xi.psi(2) == 0.0);
  CHECK(xi.phi(9) == 0.0);
  CHECK(!xi.reduced());
  CHECK(xi.with_zero_modes_removed().reduced());
  CHECK(xi.with_drift(0.25).phi(0) == 0.25);
  CHECK(xi.scaled(-2.0).phi(1) == -4.0);
  CHECK((xi + xi).psi(0) == 8.0);
  CHECK(DualVector::zeros(3).is_zero());
  CHECK_THROWS_AS(DualVector({NAN}, {}), std::invalid_argument);
}

TEST_CASE("boundary trace matches the term-by-term series") {
  const auto duals = random_duals(10, 8, 42, DualKind::kFull);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> when(0.0, 200.0);
  for (const DualVector& xi : duals) {
    for (int i = 0; i < 50; ++i) {
      const double t = when(rng);
      CHECK(boundary_trace(xi, t) == doctest::Approx(oracle::trace(xi.phi(), xi.psi(), t)).epsilon(1e-11));
    }
  }
}

TEST_CASE("profile splits into even and odd parts") {
  const DualVector xi({0.0, 0.5, -1.0}, {0.2, 1.0, 0.3});
  const DualProfile p(xi);
  for (double t : {0.3, 1.7, 4.0}) {
    CHECK(p.zeta(t) == doctest::Approx(p.xi1(t) + p.eta(t)));
    CHECK(p.xi1(t) == doctest::Approx(p.xi1(-t)));
    CHECK(p.eta(t) == doctest::Approx(-p.eta(-t)));
    CHECK(p.periodic_part(t) == doctest::Approx(p.periodic_part(t + kTwoPi)));
  }
}

TEST_CASE("dual text format round-trips") {
  const DualVector xi = random_duals(1, 5, 3, DualKind::kFull).front();
  const DualVector back = parse_dual_text(to_dual_text(xi));
  CHECK(back.phi() == xi.phi());
  CHECK(back.psi() == xi.psi());
  CHECK_THROWS(parse_dual_text("0,1,2\n"));
  CHECK_THROWS(parse_dual_text("#dual N=1\n5,1,2\n"));
}

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  const auto& rule = quadrature::gauss_legendre(16);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], 30);
  CHECK(sum == doctest::Approx(2.0 / 31.0).epsilon(1e-14));
}

TEST_CASE("sign-change isolation and |f| quadrature") {
  auto f = [](double x) { return std::sin(3.0 * x); };
  const auto roots = quadrature::sign_change_roots(f, 0.1, kTwoPi - 0.1, 64);
  REQUIRE(roots.size() == 5);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    CHECK(roots[k] == doctest::Approx((k + 1) * kPi / 3.0).epsilon(1e-14));
  }
  CHECK(quadrature::integrate_abs(f, 0.0, kTwoPi, 64) == doctest::Approx(4.0).epsilon(1e-13));
}
