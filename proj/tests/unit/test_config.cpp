#include <cmath>
#include <stdexcept>

#include "app/config.hpp"
#include "doctest.h"

using namespace stringctl;
using namespace stringctl::app;

TEST_CASE("key-value files with sections and comments") {
  const KeyValueFile kv = KeyValueFile::parse("problem = damping # trailing\n[initial]\ncosine = 1, 0.5\n");
  CHECK(*kv.get("problem") == "damping");
  CHECK(*kv.get("initial.cosine") == "1, 0.5");
  CHECK(!kv.get("horizon"));
  CHECK_THROWS_AS(KeyValueFile::parse("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueFile::parse("[broken\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueFile::parse("novalue\n"), ConfigError);
  CHECK_THROWS_AS(kv.require_known({"problem"}), ConfigError);
}

TEST_CASE("numbers") {
  CHECK(parse_number(" 2.5 ", "k") == 2.5);
  CHECK_THROWS_AS(parse_number("2.5x", "k"), ConfigError);
  CHECK_THROWS_AS(parse_number("inf", "k"), ConfigError);
  CHECK(parse_number_list("1,2,3", "k").size() == 3);
}

TEST_CASE("simulate configs need exactly one initial source") {
  const ScenarioConfig cfg = parse_config(
      "problem = stop-moving\nhorizon = 12.5\n[initial]\nbreakpoints = 0,2,0\n", Command::kSimulate);
  CHECK(cfg.problem == Problem::kStopMoving);
  CHECK(cfg.horizon == 12.5);
  REQUIRE(cfg.initial);
  CHECK((*cfg.initial)(3.0) == 2.0);
  CHECK_THROWS_AS(parse_config("problem = damping\nhorizon = 1\n", Command::kSimulate), ConfigError);
  CHECK_THROWS_AS(parse_config("problem = damping\nhorizon = 1\n[initial]\nbreakpoints = 0,1,0\n"
                               "cosine = 1\n",
                               Command::kSimulate),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("problem = damping\nhorizon = -1\n[initial]\nbreakpoints = 0,1,0\n",
                               Command::kSimulate),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("problem = complete-stop\nhorizon = 1\n[initial]\nbreakpoints = 0,1,0\n",
                               Command::kSimulate),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("problem = damping\nhorizon = 1\ncolour = red\n[initial]\nbreakpoints = 0,1,0\n",
                               Command::kSimulate),
                  ConfigError);
}

TEST_CASE("cosine initial data is sampled onto a piecewise-linear field") {
  const ScenarioConfig cfg = parse_config(
      "problem = damping\nhorizon = 3\n[initial]\ncosine = 0, 1\nsamples = 64\n", Command::kSimulate);
  REQUIRE(cfg.initial);
  CHECK(cfg.initial->size() == 64);
  for (double x : {0.0, 1.0, 2.0, 5.5}) CHECK(std::abs((*cfg.initial)(x) - std::cos(x)) < 2e-3);
  const PiecewiseLinear f = sample_cosine_series({0.5}, 8);
  CHECK(f(1.0) == doctest::Approx(0.5));
}
