#include "checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "stringctl/energy.hpp"
#include "stringctl/friction.hpp"
#include "stringctl/reach.hpp"
#include "stringctl/sampling.hpp"
#include "stringctl/spectral.hpp"

namespace stringctl::app {

std::uint64_t subseed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  // splitmix64 finalizer over a linear combination of the inputs.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1) + 0xBF58476D1CE4E5B9ULL * index;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

using Clock = std::chrono::steady_clock;

CheckResult start(int criterion, std::string name) {
  CheckResult r;
  r.criterion = criterion;
  r.name = std::move(name);
  return r;
}

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

double uniform(std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(std::uint64_t seed, std::size_t lo, std::size_t hi) {
  std::mt19937_64 rng(seed);
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// 20 fields with sup |G| = 5, shared by the decay-law and optimality checks.
std::vector<PiecewiseLinear> decay_fields(std::uint64_t seed) {
  std::vector<PiecewiseLinear> out;
  for (std::uint64_t i = 0; i < 20; ++i) {
    out.push_back(random_field(subseed(seed, 1, i), 4 + pick(subseed(seed, 2, i), 0, 8), 5.0));
  }
  return out;
}

CheckResult decay_law(std::uint64_t seed) {
  CheckResult r = start(1, "exact decay law");
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const PiecewiseLinear& g : decay_fields(seed)) {
    const DecayReport rep = decay_report(g, 4.0 * kTwoPi, Problem::kStopMoving);
    for (std::size_t k = 1; k <= 4; ++k) {
      const double expected = rep.rho0 - kTwoPi * static_cast<double>(k);
      worst = std::max(worst, std::abs(rep.trace[k].second - expected));
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.measured = {{"max_abs_error", worst}, {"seconds", r.seconds}};
  r.passed = worst <= 1e-10 && r.seconds < 1.0;
  return r;
}

CheckResult optimality_rate(std::uint64_t seed) {
  CheckResult r = start(2, "asymptotic optimality rate");
  const auto t0 = Clock::now();
  const double horizon = 8.0 * kPi;
  const std::vector<PiecewiseLinear> fields = decay_fields(seed);
  double feedback_error = 0.0;
  for (const PiecewiseLinear& g : fields) {
    const DecayReport rep = decay_report(g, horizon, Problem::kStopMoving);
    feedback_error = std::max(feedback_error, std::abs(rep.rate - 1.0));
  }
  double best_open_loop = -INFINITY;
  for (std::uint64_t j = 0; j < 100; ++j) {
    const PiecewiseLinear& g = fields[j % fields.size()];
    const ControlShape shape = j % 2 == 0 ? ControlShape::kConstant : ControlShape::kBangBang;
    const PiecewiseLinear u =
        random_control(subseed(seed, 3, j), horizon, 8 + pick(subseed(seed, 4, j), 0, 40), shape);
    const double rho0 = rho_of_field(g, Problem::kStopMoving);
    const double rhoT = rho_of_field(apply_control(g, u, horizon), Problem::kStopMoving);
    const double rate = (rho0 - rhoT) / horizon;
    best_open_loop = std::max(best_open_loop, rate);
    if (rate > 1.0 + 1e-9) {
      r.findings.push_back(format("open-loop control %.0f beats the feedback: rate %.17g", j, rate));
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.measured = {{"feedback_rate_error", feedback_error},
                {"max_open_loop_rate", best_open_loop},
                {"seconds", r.seconds}};
  r.passed = feedback_error <= 1e-10 && best_open_loop <= 1.0 + 1e-9 && r.seconds < 5.0;
  return r;
}

CheckResult near_target(std::uint64_t seed) {
  CheckResult r = start(3, "near-target characterization");
  const auto t0 = Clock::now();
  double worst = 0.0;
  double worst_at_periods = 0.0;
  double rho_drift = 0.0;
  double literal_generic = 0.0;
  const double horizon = 8.0 * kPi;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const double sup = uniform(subseed(seed, 5, i), 0.05, 0.5);
    const PiecewiseLinear g = random_field(subseed(seed, 6, i), 3 + pick(subseed(seed, 7, i), 0, 8), sup);
    const PhiTrack track = solve_track(g, horizon);
    std::mt19937_64 rng(subseed(seed, 8, i));
    std::uniform_real_distribution<double> when(0.0, horizon);
    std::uniform_real_distribution<double> where(0.0, kTwoPi);
    // 50 times × 20 positions = 10³ samples. The sign flips once for every
    // pass of the characteristic through x = 0, i.e. ⌊(x + t)/2π⌋ times.
    for (int a = 0; a < 50; ++a) {
      const double t = when(rng);
      const PiecewiseLinear snap = flow_snapshot(track, t);
      const double k_literal = std::floor(t / kTwoPi);
      for (int b = 0; b < 20; ++b) {
        const double x = where(rng);
        const double crossings = std::floor((x + t) / kTwoPi);
        const double sign = std::fmod(crossings, 2.0) == 0.0 ? 1.0 : -1.0;
        const double lit = std::fmod(k_literal, 2.0) == 0.0 ? 1.0 : -1.0;
        worst = std::max(worst, std::abs(snap(x) - sign * g(x + t)));
        literal_generic = std::max(literal_generic, std::abs(snap(x) - lit * g(x + t)));
      }
    }
    const double rho0 = rho_of_field(g, Problem::kStopMoving);
    for (int k = 0; k <= 4; ++k) {
      const double t = kTwoPi * k;
      const PiecewiseLinear snap = flow_snapshot(track, t);
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      for (int b = 0; b < 20; ++b) {
        const double x = where(rng);
        worst_at_periods = std::max(worst_at_periods, std::abs(snap(x) - sign * g(x)));
      }
      rho_drift = std::max(rho_drift, std::abs(rho_of_field(snap, Problem::kStopMoving) - rho0));
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.measured = {{"max_residual", worst},
                {"max_residual_at_periods", worst_at_periods},
                {"rho_drift_over_periods", rho_drift},
                {"literal_period_count_deviation", literal_generic},
                {"seconds", r.seconds}};
  r.findings.push_back(
      "the sign (-1)^k with k = floor(t/2π) matches only at t = 2kπ or where x + (t mod 2π) < 2π; "
      "the exponent that holds everywhere is floor((x + t)/2π)");
  r.passed = worst < 1e-10 && worst_at_periods < 1e-10 && rho_drift <= 1e-10;
  return r;
}

CheckResult a_priori_bound(std::uint64_t seed) {
  CheckResult r = start(4, "a priori reachability bound");
  const auto t0 = Clock::now();
  const PiecewiseLinear zero = PiecewiseLinear::constant(0.0);
  double worst_excess = -INFINITY;
  std::uint64_t j = 0;
  for (double periods : {1.0, 2.0, 4.0}) {
    const double horizon = kTwoPi * periods;
    for (int c = 0; c < 100; ++c, ++j) {
      const ControlShape shape = static_cast<ControlShape>(c % 3);
      const PiecewiseLinear u =
          random_control(subseed(seed, 9, j), horizon, 4 + pick(subseed(seed, 10, j), 0, 30), shape);
      const double rho = rho_of_field(apply_control(zero, u, horizon), Problem::kStopMoving);
      worst_excess = std::max(worst_excess, rho - horizon);
      if (rho > horizon + 1e-9) {
        r.findings.push_back(format("control %.0f at T = %.17g gives ρ = %.17g", double(j), horizon, rho));
      }
    }
  }
  const PiecewiseLinear one = PiecewiseLinear::constant(1.0, kTwoPi, false);
  const double saturated = rho_of_field(apply_control(zero, one, kTwoPi), Problem::kStopMoving);
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.measured = {{"max_rho_minus_T", worst_excess},
                {"constant_control_rho_at_2pi", saturated},
                {"seconds", r.seconds}};
  r.passed = worst_excess <= 1e-9 && std::abs(saturated - kTwoPi) <= 1e-10;
  return r;
}

CheckResult shape_convergence(std::uint64_t seed) {
  CheckResult r = start(5, "limit-shape convergence");
  const auto t0 = Clock::now();
  bool monotone = true;
  bool under_fit = true;
  double worst_ratio = 0.0;  // max over ξ, N of e(N)·N / (4·e(4))
  for (std::uint64_t i = 0; i < 10; ++i) {
    const std::size_t order = pick(subseed(seed, 11, i), 1, 8);
    const DualVector xi = random_duals(1, order, subseed(seed, 12, i), DualKind::kFull).front();
    const double limit = limit_support_full(xi);
    std::vector<double> err;
    for (int n : {4, 8, 16, 32}) {
      err.push_back(std::abs(support_normalized(xi, kTwoPi * n) - limit));
    }
    const double c = 4.0 * err[0];
    for (std::size_t k = 0; k < err.size(); ++k) {
      const double n = 4.0 * std::pow(2.0, static_cast<double>(k));
      if (k > 0 && err[k] > err[k - 1] + 1e-9) monotone = false;
      if (c > 0.0) worst_ratio = std::max(worst_ratio, err[k] * n / c);
      if (err[k] > c / n + 1e-9) {
        under_fit = false;
        r.findings.push_back(format("dual %.0f: e(%.0f) = %.6e exceeds c/N", double(i), n, err[k]) +
                             format(" = %.6e (c = 4·e(4) = %.6e)", c / n, c));
      }
    }
  }
  double reduced_worst = 0.0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const std::size_t order = pick(subseed(seed, 13, i), 1, 8);
    const DualVector xi = random_duals(1, order, subseed(seed, 14, i), DualKind::kReduced).front();
    const double limit = limit_support_reduced(xi);
    for (int n = 1; n <= 16; ++n) {
      const double horizon = kTwoPi * n;
      reduced_worst = std::max(reduced_worst, std::abs(support_reduced(xi, horizon) / horizon - limit));
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.measured = {{"monotone", monotone ? 1.0 : 0.0},
                {"within_c_over_N", under_fit ? 1.0 : 0.0},
                {"max_N_error_over_4_error4", worst_ratio},
                {"reduced_max_error", reduced_worst},
                {"seconds", r.seconds}};
  r.passed = monotone && under_fit && reduced_worst <= 1e-8;
  return r;
}

CheckResult duality(std::uint64_t seed) {
  CheckResult r = start(6, "duality attainment");
  const auto t0 = Clock::now();
  double attain = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t order = pick(subseed(seed, 15, i), 1, 8);
    const DualVector xi = random_duals(1, order, subseed(seed, 16, i), DualKind::kReduced).front();
    const StringState f = extremal_state(xi, Problem::kDamping);
    const double lhs = pairing(f, xi);
    const double rhs = rho_norm(f, Problem::kDamping) * limit_support_reduced(xi);
    attain = std::max(attain, std::abs(lhs - rhs) / std::abs(rhs));
  }
  double worst_ratio = -INFINITY;
  int violations = 0;
  for (std::uint64_t j = 0; j < 1000; ++j) {
    const double sup = uniform(subseed(seed, 17, j), 0.1, 3.0);
    const PiecewiseLinear g = random_field(subseed(seed, 18, j), 2 + pick(subseed(seed, 19, j), 0, 8), sup);
    const StringState f = StringState::from_field(g);
    const std::size_t order = pick(subseed(seed, 20, j), 1, 8);
    const DualVector xi = random_duals(1, order, subseed(seed, 21, j), DualKind::kReduced).front();
    const double lhs = pairing(f, xi);
    const double bound = rho_norm(f, Problem::kDamping) * limit_support_reduced(xi);
    worst_ratio = std::max(worst_ratio, lhs / bound);
    if (lhs > bound * (1.0 + 1e-8) + 1e-12) {
      ++violations;
      r.findings.push_back(format("pair %.0f: <f,ξ> = %.17g > ρH = %.17g", double(j), lhs, bound));
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.measured = {{"max_relative_attainment_error", attain},
                {"max_pairing_over_bound", worst_ratio},
                {"violations", violations},
                {"seconds", r.seconds}};
  r.passed = attain <= 1e-6 && violations == 0;
  return r;
}

CheckResult spectral_truncation(std::uint64_t) {
  CheckResult r = start(7, "spectral truncation");
  const auto t0 = Clock::now();
  const double one = std::abs(secular_roots(1).at(0) - 1.0 / std::sqrt(3.0));
  const std::vector<double> two = secular_roots(2);
  const double s = std::sqrt(145.0);
  const double two_err = std::max(std::abs(two.at(0) - std::sqrt((15.0 - s) / 10.0)),
                                  std::abs(two.at(1) - std::sqrt((15.0 + s) / 10.0)));
  bool monotone = true;
  std::vector<std::pair<std::string, double>> gaps;
  for (std::size_t k = 0; k < 3; ++k) {
    double prev = INFINITY;
    for (std::size_t n : {10, 20, 40, 80}) {
      const double gap = std::abs(secular_roots(n)[k] - (static_cast<double>(k) + 0.5));
      gaps.emplace_back("gap_k" + std::to_string(k) + "_N" + std::to_string(n), gap);
      if (!(gap < prev)) monotone = false;
      prev = gap;
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.measured = {{"N1_error", one}, {"N2_error", two_err}};
  r.measured.insert(r.measured.end(), gaps.begin(), gaps.end());
  r.measured.emplace_back("seconds", r.seconds);
  r.passed = one <= 1e-12 && two_err <= 1e-12 && monotone;
  return r;
}

CheckResult singular_arcs(std::uint64_t seed) {
  CheckResult r = start(8, "singular-arc identities");
  const auto t0 = Clock::now();
  std::vector<double> t_grid(512);
  for (std::size_t i = 0; i < t_grid.size(); ++i) t_grid[i] = 2.0 * kTwoPi * i / 512.0;
  std::vector<double> x_grid(64);
  for (std::size_t i = 0; i < x_grid.size(); ++i) x_grid[i] = kTwoPi * i / 64.0;

  double anti = 0.0;
  double boundary = 0.0;
  bool all_pass = true;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const std::size_t modes = pick(subseed(seed, 22, i), 1, 4);
    const double amp = uniform(subseed(seed, 23, i), 0.2, 1.0);
    const SpectralSet u = random_half_integer_set(modes, 7.5, amp, subseed(seed, 24, i));
    const SingularFieldReport rep = singular_field_check(u, t_grid, x_grid);
    anti = std::max(anti, rep.antiperiodic_residual);
    boundary = std::max(boundary, rep.boundary_residual);
    if (!rep.passed()) {
      all_pass = false;
      r.findings.push_back(format("control %.0f fails: antiperiodic %.3e, boundary %.3e", double(i),
                                  rep.antiperiodic_residual, rep.boundary_residual));
    }
  }
  int rejected = 0;
  for (double mu : {1.0, 2.0, 0.75}) {
    try {
      singular_field_check(SpectralSet(std::vector<SpectralEntry>{{mu, {1.0, 0.0}}}), t_grid, x_grid);
    } catch (const std::invalid_argument&) {
      ++rejected;
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.measured = {{"max_antiperiodic_residual", anti},
                {"max_boundary_residual", boundary},
                {"non_half_integer_rejected", rejected},
                {"seconds", r.seconds}};
  r.passed = all_pass && anti < 1e-10 && boundary < 1e-10 && rejected == 3;
  return r;
}

CheckResult energy_contraction(std::uint64_t seed) {
  CheckResult r = start(9, "energy contraction (empirical)");
  const auto t0 = Clock::now();
  std::vector<double> times;
  for (int k = 0; k <= 16; ++k) times.push_back(0.5 * kPi * k);
  double worst = -INFINITY;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const PiecewiseLinear g1 = random_field(subseed(seed, 25, i), 2 + pick(subseed(seed, 26, i), 0, 8),
                                            uniform(subseed(seed, 27, i), 0.2, 4.0));
    const PiecewiseLinear g2 = random_field(subseed(seed, 28, i), 2 + pick(subseed(seed, 29, i), 0, 8),
                                            uniform(subseed(seed, 30, i), 0.2, 4.0));
    const EnergyReport rep = contraction_series(g1, g2, times);
    worst = std::max(worst, rep.max_uptick);
    if (rep.max_uptick > 1e-10) {
      r.findings.push_back(format("pair %.0f: uptick %.6e", double(i), rep.max_uptick));
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.measured = {{"max_uptick", worst}, {"seconds", r.seconds}};
  r.passed = worst <= 1e-10;
  return r;
}

CheckResult eisenstein(std::uint64_t) {
  CheckResult r = start(10, "eisenstein kernel oracle");
  const auto t0 = Clock::now();
  const EisensteinValue at0 = eisenstein_kernel(0.5, 0.0);
  const EisensteinValue atpi = eisenstein_kernel(0.5, kPi);
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  r.measured = {{"lhs_x0", at0.lhs},
                {"lhs_xpi", atpi.lhs},
                {"lhs_xpi_error", std::abs(atpi.lhs + kPi)},
                {"rhs_closed_xpi", atpi.rhs_closed},
                {"ratio_lhs_over_rhs_xpi", atpi.lhs / atpi.rhs_closed},
                {"seconds", r.seconds}};
  r.passed = std::abs(at0.lhs) <= 1e-8 && std::abs(atpi.lhs + kPi) <= 1e-6;
  return r;
}

}  // namespace

CheckResult run_criterion(int criterion, std::uint64_t seed) {
  switch (criterion) {
    case 1: return decay_law(seed);
    case 2: return optimality_rate(seed);
    case 3: return near_target(seed);
    case 4: return a_priori_bound(seed);
    case 5: return shape_convergence(seed);
    case 6: return duality(seed);
    case 7: return spectral_truncation(seed);
    case 8: return singular_arcs(seed);
    case 9: return energy_contraction(seed);
    case 10: return eisenstein(seed);
    default: break;
  }
  throw std::invalid_argument("no acceptance criterion " + std::to_string(criterion));
}

std::vector<int> suite_criteria(std::string_view suite) {
  if (suite == "decay") return {1, 2, 3, 4};
  if (suite == "shape") return {5};
  if (suite == "duality") return {6};
  if (suite == "spectral") return {7, 8, 10};
  if (suite == "energy") return {9};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

}  // namespace stringctl::app
