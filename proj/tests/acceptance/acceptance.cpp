// Prints one PASS/FAIL line per acceptance criterion. Exit status is 0 only
// when every selected criterion passes.

#include <cstdint>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "app/checks.hpp"

namespace app = stringctl::app;

int main(int argc, char** argv) {
  CLI::App cli{"acceptance criteria"};
  std::vector<int> selected;
  std::uint64_t seed = app::kDefaultSeed;
  bool verbose = false;
  cli.add_option("--criterion", selected, "criterion number (repeatable)")->check(CLI::Range(1, 10));
  cli.add_option("--seed", seed, "base seed");
  cli.add_flag("--verbose", verbose, "print measured values");
  CLI11_PARSE(cli, argc, argv);
  if (selected.empty()) selected = app::suite_criteria("all");

  bool all = true;
  for (int k : selected) {
    const app::CheckResult r = app::run_criterion(k, seed);
    all = all && r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << " [" << r.criterion << "] " << r.name << '\n';
    if (verbose || !r.passed) {
      for (const auto& [key, value] : r.measured) std::cout << "    " << key << " = " << value << '\n';
    }
    for (const auto& f : r.findings) std::cout << "    note: " << f << '\n';
  }
  return all ? 0 : 1;
}
