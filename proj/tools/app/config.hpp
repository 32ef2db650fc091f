#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stringctl/duals.hpp"
#include "stringctl/problem.hpp"
#include "stringctl/pwlin.hpp"

namespace stringctl::app {

// Malformed or inconsistent configuration. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `key = value` lines, `[section]` headers, `#` comments. Keys inside a
// section are stored as "section.key".
class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text);

  std::optional<std::string> get(const std::string& key) const;
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  // Throws ConfigError naming the first key outside `allowed`.
  void require_known(const std::vector<std::string>& allowed) const;

 private:
  std::map<std::string, std::string> values_;
};

double parse_number(std::string_view text, const std::string& key);
std::vector<double> parse_number_list(std::string_view text, const std::string& key);

struct ScenarioConfig {
  Problem problem = Problem::kStopMoving;
  double horizon = 0.0;
  std::uint64_t seed = 1;
  std::string output = "out";
  double stride = kPi / 4.0;

  // Exactly one initial-data source, already resolved to a field.
  std::optional<PiecewiseLinear> initial;
  std::string initial_source;

  // reachable
  std::vector<double> horizons;
  std::optional<DualVector> dual;

  // spectral
  std::vector<std::size_t> orders{10, 20, 40, 80};
  std::size_t root_count = 3;
};

enum class Command { kSimulate, kReachable, kSpectral };

// Parses and validates for the given command. Relative file references are
// resolved against `base_dir`.
ScenarioConfig parse_config(std::string_view text, Command command,
                            const std::string& base_dir = ".");
ScenarioConfig load_config(const std::string& path, Command command);

// Σ c_n cos nx sampled at `samples` equally spaced points and joined linearly.
PiecewiseLinear sample_cosine_series(const std::vector<double>& coeffs, std::size_t samples);

}  // namespace stringctl::app
