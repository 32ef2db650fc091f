#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "checks.hpp"
#include "stringctl/energy.hpp"
#include "stringctl/friction.hpp"
#include "stringctl/reach.hpp"
#include "stringctl/spectral.hpp"

namespace stringctl::app {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + name + " in " + dir);
  return out;
}

std::vector<double> stride_grid(double horizon, double stride) {
  std::vector<double> times;
  for (std::size_t i = 0;; ++i) {
    const double t = stride * static_cast<double>(i);
    if (t >= horizon - 1e-12) break;
    times.push_back(t);
  }
  times.push_back(horizon);
  return times;
}

void check_invariants(const PhiTrack& track) {
  const TrackDiagnostics d = check_track(track);
  const double scale = 1.0 + sup_norm(track.initial_field(), SupNorm::kPlain);
  if (d.max_residual > 1e-9 * scale) {
    throw InvariantViolation("interval equation φ + ½v + Σv = G violated, residual " +
                             num(d.max_residual));
  }
  if (d.max_abs_v > 1.0 + 1e-12) {
    throw InvariantViolation("control bound |u| ≤ 1 violated, max " + num(d.max_abs_v));
  }
  if (d.max_sign_mismatch > 1e-9) {
    throw InvariantViolation("sign condition v = sign φ violated by " + num(d.max_sign_mismatch));
  }
  if (d.max_phi_excess > 1e-9 * scale) {
    throw InvariantViolation("boundary bound |φ| ≤ |G| violated by " + num(d.max_phi_excess));
  }
}

}  // namespace

Snapshot parse_snapshot(const std::string& spec) {
  if (spec.rfind("t=", 0) != 0) throw ConfigError("snapshot must look like t=<value>");
  const std::string label = spec.substr(2);
  return {label, parse_number(label, "--snapshot")};
}

void run_simulate(const ScenarioConfig& cfg, const std::vector<Snapshot>& snapshots,
                  std::ostream& log) {
  const PiecewiseLinear& g = *cfg.initial;
  for (const Snapshot& s : snapshots) {
    if (s.t < 0.0 || s.t > cfg.horizon) {
      throw ConfigError("snapshot time " + s.label + " outside [0, horizon]");
    }
  }
  const PhiTrack track = solve_track(g, cfg.horizon);
  check_invariants(track);

  std::ofstream flow = open_output(cfg.output, "flow.csv");
  std::ofstream energy = open_output(cfg.output, "energy.csv");
  flow << "t,rho,phi_at_0,u\n";
  energy << "t,E,uptick\n";
  double prev_rho = 0.0;
  double prev_energy = 0.0;
  double max_uptick = 0.0;
  const std::vector<double> times = stride_grid(cfg.horizon, cfg.stride);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const PiecewiseLinear field = flow_snapshot(track, t);
    const double rho = rho_of_field(field, cfg.problem);
    const double e = energy_first_order(field);
    const double uptick = i == 0 ? 0.0 : e - prev_energy;
    // Under damping ρ may rise between periods; sup |g| may not.
    if (i > 0 && cfg.problem == Problem::kStopMoving && rho > prev_rho + 1e-9) {
      throw InvariantViolation("ρ increased along the flow at t = " + num(t));
    }
    if (uptick > 1e-9 * (1.0 + prev_energy)) {
      throw InvariantViolation("energy increased along the flow at t = " + num(t));
    }
    max_uptick = std::max(max_uptick, uptick);
    flow << num(t) << ',' << num(rho) << ',' << num(track.phi(t)) << ',' << num(track.control(t))
         << '\n';
    energy << num(t) << ',' << num(e) << ',' << num(uptick) << '\n';
    prev_rho = rho;
    prev_energy = e;
  }
  for (const Snapshot& s : snapshots) {
    write_pwl_file((std::filesystem::path(cfg.output) / ("snapshot_" + s.label + ".pwl")).string(),
                   flow_snapshot(track, s.t));
  }

  const DecayReport rep = decay_report(g, cfg.horizon, cfg.problem);
  for (std::size_t k = 1; k < rep.trace.size(); ++k) {
    if (rep.trace[k].second > rep.trace[k - 1].second + 1e-9 &&
        (cfg.problem == Problem::kStopMoving || k + 1 < rep.trace.size())) {
      throw InvariantViolation("ρ increased between periods at t = " + num(rep.trace[k].first));
    }
  }
  std::ofstream summary = open_output(cfg.output, "summary.txt");
  summary << "problem = " << to_string(cfg.problem) << '\n'
          << "horizon = " << num(cfg.horizon) << '\n'
          << "initial = " << cfg.initial_source << '\n'
          << "intervals = " << track.intervals().size() << '\n'
          << "rho0 = " << num(rep.rho0) << '\n'
          << "rhoT = " << num(rep.rhoT) << '\n'
          << "rate = " << num(rep.rate) << '\n'
          << "energy0 = " << num(energy_first_order(g)) << '\n'
          << "energyT = " << num(prev_energy) << '\n';
  log << "rho0 = " << num(rep.rho0) << ", rhoT = " << num(rep.rhoT) << ", rate = " << num(rep.rate)
      << '\n';
}

void run_reachable(const ScenarioConfig& cfg, std::ostream& log) {
  const DualVector& xi = *cfg.dual;
  const DualVector reduced = xi.with_zero_modes_removed();
  const double limit = limit_support_full(xi);
  std::ofstream out = open_output(cfg.output, "support_scan.csv");
  out << "T,H_full,H_reduced,H_normalized,H_limit\n";
  for (double t : cfg.horizons) {
    out << num(t) << ',' << num(support_full(xi, t)) << ',' << num(support_reduced(reduced, t)) << ','
        << num(support_normalized(xi, t)) << ',' << num(limit) << '\n';
  }
  log << "wrote " << cfg.horizons.size() << " support rows\n";
}

void run_spectral(const ScenarioConfig& cfg, std::ostream& log) {
  std::ofstream out = open_output(cfg.output, "secular.csv");
  out << "N,k,mu_N,mu_limit,gap\n";
  for (std::size_t n : cfg.orders) {
    const std::vector<double> roots = secular_roots(n);
    const std::vector<double> limits = limit_roots(std::min(cfg.root_count, n));
    for (std::size_t k = 0; k < limits.size(); ++k) {
      out << n << ',' << k << ',' << num(roots[k]) << ',' << num(limits[k]) << ','
          << num(std::abs(roots[k] - limits[k])) << '\n';
    }
  }
  log << "wrote secular roots for " << cfg.orders.size() << " truncation orders\n";
}

bool run_verify(const std::string& suite, std::uint64_t seed, const std::string& out_dir,
                std::ostream& log) {
  const std::vector<int> criteria = suite_criteria(suite);
  nlohmann::ordered_json report;
  report["suite"] = suite;
  report["seed"] = seed;
  report["checks"] = nlohmann::ordered_json::array();
  bool all = true;
  for (int c : criteria) {
    const CheckResult r = run_criterion(c, seed);
    all = all && r.passed;
    nlohmann::ordered_json entry;
    entry["criterion"] = r.criterion;
    entry["name"] = r.name;
    entry["passed"] = r.passed;
    nlohmann::ordered_json measured = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.measured) {
      // Timings vary between runs; keep the report itself reproducible.
      if (key != "seconds") measured[key] = value;
    }
    entry["measured"] = measured;
    entry["findings"] = r.findings;
    report["checks"].push_back(entry);
    log << (r.passed ? "PASS" : "FAIL") << "  [" << r.criterion << "] " << r.name << '\n';
    for (const auto& f : r.findings) log << "      " << f << '\n';
  }
  report["passed"] = all;
  std::ofstream out = open_output(out_dir, "verify.json");
  out << report.dump(2) << '\n';
  return all;
}

}  // namespace stringctl::app
