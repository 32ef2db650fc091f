#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "stringctl/energy.hpp"
#include "stringctl/sampling.hpp"

using namespace stringctl;

TEST_CASE("first-order energy of simple fields") {
  CHECK(energy_first_order(PiecewiseLinear::constant(0.5)) == doctest::Approx(kPi / 4.0));
  CHECK(energy_first_order(PiecewiseLinear::linear(-kPi, 1.0)) ==
        doctest::Approx(std::pow(kPi, 3) / 3.0).epsilon(1e-14));
  const PiecewiseLinear g = random_field(3, 6, 2.0);
  CHECK(energy_first_order(g) ==
        doctest::Approx(0.5 * oracle::midpoint_pieces([&](double x) { return g(x) * g(x); },
                                                        oracle::breakpoints(g, 0.0, kTwoPi), 0.0, kTwoPi))
            .epsilon(1e-8));
  CHECK_THROWS_AS(energy_first_order(PiecewiseLinear::constant(1.0, 2.0, false)), std::invalid_argument);
}

TEST_CASE("second-order energy by Parseval") {
  const std::vector<double> none{0.0};
  const std::vector<double> c{1.5};
  CHECK(energy_second_order(none, c) == doctest::Approx(kPi * 1.5 * 1.5));
  const std::vector<double> a{0.0, 0.0, 1.0};
  const std::vector<double> b{0.0, 1.0};
  // ‖∂ₓ cos 2x‖² = 4π and ‖cos x‖² = π.
  CHECK(energy_second_order(a, b) == doctest::Approx(0.5 * 4.0 * kPi + 0.5 * kPi));
}

TEST_CASE("integration by parts for cosine series") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::vector<double> u(6);
  std::vector<double> v(6);
  for (auto& x : u) x = c(rng);
  for (auto& x : v) x = c(rng);
  CHECK(laplacian_pairing(u, v) + gradient_pairing(u, v) == doctest::Approx(0.0).scale(1.0));
  auto du = [&](double x) {
    double s = 0.0;
    for (std::size_t n = 1; n < u.size(); ++n) s -= n * u[n] * std::sin(n * x);
    return s;
  };
  auto dv = [&](double x) {
    double s = 0.0;
    for (std::size_t n = 1; n < v.size(); ++n) s -= n * v[n] * std::sin(n * x);
    return s;
  };
  CHECK(gradient_pairing(u, v) ==
        doctest::Approx(oracle::simpson([&](double x) { return du(x) * dv(x); }, 0.0, kTwoPi, 20000))
            .epsilon(1e-10));
}

TEST_CASE("energy of the difference of two flows") {
  const std::vector<double> times{0.0, kTwoPi};
  const EnergyReport r =
      contraction_series(PiecewiseLinear::constant(2.0), PiecewiseLinear::constant(0.3), times);
  CHECK(r.values[0] == doctest::Approx(kPi * 1.7 * 1.7));
  CHECK(r.values[1] == doctest::Approx(kPi * 1.3 * 1.3));
  CHECK(r.monotone);
  CHECK(r.max_uptick < 0.0);
}

TEST_CASE("energy of the difference never grows along random flows") {
  std::vector<double> times;
  for (int k = 0; k <= 16; ++k) times.push_back(k * kPi / 2.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const EnergyReport r =
        contraction_series(random_field(2 * seed, 6, 3.0), random_field(2 * seed + 1, 6, 1.0), times);
    CHECK(r.monotone);
  }
  const std::vector<double> unsorted{1.0, 0.5};
  CHECK_THROWS_AS(contraction_series(PiecewiseLinear::constant(0.0), PiecewiseLinear::constant(0.0), unsorted),
                  std::invalid_argument);
  CHECK(contraction_series(PiecewiseLinear::constant(0.0), PiecewiseLinear::constant(0.0), {}).max_uptick ==
        0.0);
}
