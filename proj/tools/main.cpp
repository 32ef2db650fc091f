#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "app/checks.hpp"
#include "app/commands.hpp"
#include "app/config.hpp"

namespace app = stringctl::app;

int main(int argc, char** argv) {
  CLI::App cli{"Time-optimal damping of a closed string: flows, support functions, spectra"};
  cli.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  double stride = 0.0;
  std::vector<std::string> snapshot_specs;

  auto* simulate = cli.add_subcommand("simulate", "run the dry-friction flow for a scenario");
  simulate->add_option("config", config_path, "scenario file")->required();
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--stride", stride, "time step of flow.csv");
  simulate->add_option("--snapshot", snapshot_specs, "write the field at t=<v>");

  auto* reachable = cli.add_subcommand("reachable", "scan support functions of reachable sets");
  reachable->add_option("config", config_path, "scenario file")->required();
  reachable->add_option("--out", out_dir, "output directory");

  auto* spectral = cli.add_subcommand("spectral", "secular roots of the truncated problem");
  spectral->add_option("config", config_path, "scenario file")->required();
  spectral->add_option("--out", out_dir, "output directory");

  std::string suite;
  std::uint64_t seed = app::kDefaultSeed;
  auto* verify = cli.add_subcommand("verify", "run acceptance checks");
  verify->add_option("suite", suite, "decay, duality, shape, spectral, energy or all")->required();
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--out", out_dir, "directory for verify.json");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      try {
        app::suite_criteria(suite);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
      }
      return app::run_verify(suite, seed, out_dir.empty() ? "." : out_dir, std::cout) ? 0 : 1;
    }

    const app::Command command = *simulate    ? app::Command::kSimulate
                                 : *reachable ? app::Command::kReachable
                                              : app::Command::kSpectral;
    app::ScenarioConfig cfg;
    std::vector<app::Snapshot> snapshots;
    try {
      cfg = app::load_config(config_path, command);
      if (!out_dir.empty()) cfg.output = out_dir;
      if (simulate->count("--stride") != 0) {
        if (!(stride > 0.0)) throw app::ConfigError("--stride must be positive");
        cfg.stride = stride;
      }
      for (const auto& s : snapshot_specs) snapshots.push_back(app::parse_snapshot(s));
    } catch (const app::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return 2;
    }

    switch (command) {
      case app::Command::kSimulate: app::run_simulate(cfg, snapshots, std::cout); break;
      case app::Command::kReachable: app::run_reachable(cfg, std::cout); break;
      case app::Command::kSpectral: app::run_spectral(cfg, std::cout); break;
    }
    return 0;
  } catch (const app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const app::InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
