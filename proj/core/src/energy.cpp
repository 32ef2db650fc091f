#include "stringctl/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "stringctl/friction.hpp"

namespace stringctl {

double energy_first_order(const PiecewiseLinear& g) {
  if (!g.periodic()) throw std::invalid_argument("energy needs a periodic field");
  return 0.5 * integrate(g, 0.0, g.domain_length(), IntegralMode::kSquare);
}

namespace {

double coeff(std::span<const double> c, std::size_t n) { return n < c.size() ? c[n] : 0.0; }

double weighted_sum(std::span<const double> u, std::span<const double> v) {
  double sum = 0.0;
  const std::size_t n_max = std::min(u.size(), v.size());
  for (std::size_t n = 1; n < n_max; ++n) {
    const double nn = static_cast<double>(n);
    sum += nn * nn * u[n] * v[n];
  }
  return kPi * sum;
}

}  // namespace

double energy_second_order(std::span<const double> f0_coeffs,
                           std::span<const double> f1_coeffs) {
  const std::size_t n_max = std::max(f0_coeffs.size(), f1_coeffs.size());
  double sum = 0.0;
  for (std::size_t n = 1; n < n_max; ++n) {
    const double nn = static_cast<double>(n);
    const double a = coeff(f0_coeffs, n);
    const double b = coeff(f1_coeffs, n);
    sum += b * b + nn * nn * a * a;
  }
  const double b0 = coeff(f1_coeffs, 0);
  return 0.5 * kPi * sum + kPi * b0 * b0;
}

double laplacian_pairing(std::span<const double> u, std::span<const double> v) {
  return -weighted_sum(u, v);
}

double gradient_pairing(std::span<const double> u, std::span<const double> v) {
  return weighted_sum(u, v);
}

EnergyReport contraction_series(const PiecewiseLinear& g1, const PiecewiseLinear& g2,
                                std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
      throw std::invalid_argument("contraction times must be finite and nonnegative");
    }
    if (i > 0 && times[i] < times[i - 1]) {
      throw std::invalid_argument("contraction times must be sorted");
    }
  }
  EnergyReport rep;
  if (times.empty()) return rep;
  const double last = times.back();
  auto snapshot = [last](const PiecewiseLinear& g) {
    return [g, track = last > 0.0 ? std::optional<PhiTrack>(solve_track(g, last)) : std::nullopt](
               double t) { return t == 0.0 ? g : flow_snapshot(*track, t); };
  };
  const auto flow1 = snapshot(g1);
  const auto flow2 = snapshot(g2);
  rep.max_uptick = times.size() > 1 ? -std::numeric_limits<double>::infinity() : 0.0;
  for (double t : times) {
    rep.times.push_back(t);
    rep.values.push_back(energy_first_order(flow1(t) - flow2(t)));
    if (rep.values.size() > 1) {
      rep.max_uptick =
          std::max(rep.max_uptick, rep.values.back() - rep.values[rep.values.size() - 2]);
    }
  }
  rep.monotone = rep.max_uptick <= 1e-10;
  return rep;
}

}  // namespace stringctl
