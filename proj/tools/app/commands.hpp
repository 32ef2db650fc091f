#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"

namespace stringctl::app {

// A computed trajectory broke one of the flow invariants. Maps to exit 3.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Snapshot {
  std::string label;  // as given on the command line
  double t;
};

// Parses "t=<v>".
Snapshot parse_snapshot(const std::string& spec);

// flow.csv (t,rho,phi_at_0,u), energy.csv (t,E,uptick), snapshot_<t>.pwl
// files and summary.txt.
void run_simulate(const ScenarioConfig& cfg, const std::vector<Snapshot>& snapshots,
                  std::ostream& log);

// support_scan.csv (T,H_full,H_reduced,H_normalized,H_limit).
void run_reachable(const ScenarioConfig& cfg, std::ostream& log);

// secular.csv (N,k,mu_N,mu_limit,gap).
void run_spectral(const ScenarioConfig& cfg, std::ostream& log);

// Runs the suite, writes verify.json into `out_dir` and returns true iff
// every check passed.
bool run_verify(const std::string& suite, std::uint64_t seed, const std::string& out_dir,
                std::ostream& log);

}  // namespace stringctl::app
