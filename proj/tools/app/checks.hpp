#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stringctl::app {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::vector<std::pair<std::string, double>> measured;
  // Offending inputs and other remarks.
  std::vector<std::string> findings;
};

inline constexpr std::uint64_t kDefaultSeed = 20261016;

// Criteria 1..10.
CheckResult run_criterion(int criterion, std::uint64_t seed);

// decay → 1-4, shape → 5, duality → 6, spectral → 7, 8, 10, energy → 9,
// all → 1-10. Throws std::invalid_argument for an unknown name.
std::vector<int> suite_criteria(std::string_view suite);

// Independent per-item seed from a base seed, a stream id and an index.
std::uint64_t subseed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace stringctl::app
