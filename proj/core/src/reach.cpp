#include "stringctl/reach.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "stringctl/quadrature.hpp"

namespace stringctl {

Problem parse_problem(std::string_view name) {
  if (name == "complete-stop") return Problem::kCompleteStop;
  if (name == "stop-moving") return Problem::kStopMoving;
  if (name == "damping") return Problem::kDamping;
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

std::string_view to_string(Problem p) noexcept {
  switch (p) {
    case Problem::kCompleteStop: return "complete-stop";
    case Problem::kStopMoving: return "stop-moving";
    case Problem::kDamping: return "damping";
  }
  return "unknown";
}

ReachQuery::ReachQuery(Problem p, double t) : problem(p), horizon(t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("reach horizon must be positive");
  }
}

namespace {

void require_circle(const PiecewiseLinear& f, const char* what) {
  if (!f.periodic() || std::abs(f.domain_length() - kTwoPi) > kBreakpointTolerance) {
    throw std::invalid_argument(std::string(what) + " must be a 2π-periodic function");
  }
}

double parity_defect(const PiecewiseLinear& f, double sign) {
  return sup_norm(combine(f, reflect(f), 1.0, -sign), SupNorm::kPlain);
}

void require_positive_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("support horizon must be positive");
  }
}

void require_reduced(const DualVector& xi) {
  if (!xi.reduced()) {
    throw std::invalid_argument("reduced support functions need φ₀ = ψ₀ = 0");
  }
}

// 64 (N+1) cells per period, as the sign isolation resolution.
std::size_t cells_for(const DualVector& xi, double length) {
  const double per_period = 64.0 * static_cast<double>(xi.order() + 1);
  return std::max<std::size_t>(
      64, static_cast<std::size_t>(std::ceil(per_period * length / kTwoPi)));
}

}  // namespace

StringState::StringState(PiecewiseLinear f0_gradient, PiecewiseLinear f1)
    : gradient_(std::move(f0_gradient)), f1_(std::move(f1)), g_(gradient_ + f1_) {
  require_circle(gradient_, "displacement slope");
  require_circle(f1_, "velocity");
  const double scale = 1.0 + sup_norm(g_, SupNorm::kPlain);
  if (parity_defect(f1_, 1.0) > 1e-9 * scale) {
    throw std::invalid_argument("velocity of an even state must be even");
  }
  if (parity_defect(gradient_, -1.0) > 1e-9 * scale) {
    throw std::invalid_argument("displacement slope of an even state must be odd");
  }
}

StringState StringState::from_field(const PiecewiseLinear& g) {
  auto [even, odd] = even_odd_parts(g);
  return StringState(std::move(odd), std::move(even));
}

StringState StringState::from_displacement(const PiecewiseLinear& f0,
                                           PiecewiseLinear f1) {
  require_circle(f0, "displacement");
  const double scale = 1.0 + sup_norm(f0, SupNorm::kPlain);
  for (std::size_t i = 0; i < f0.size(); ++i) {
    const double next = i + 1 < f0.size() ? f0.segment(i + 1).value : f0.segment(0).value;
    if (std::abs(f0.right_limit(i) - next) > 1e-12 * scale) {
      throw std::invalid_argument("displacement must be continuous");
    }
  }
  return StringState(derivative(f0), std::move(f1));
}

PiecewiseLinear StringState::f0() const {
  const PiecewiseLinear primitive = antiderivative(gradient_);
  const double mean = integrate(primitive, 0.0, kTwoPi) / kTwoPi;
  return add_constant(primitive, -mean);
}

StringState StringState::scaled(double a) const {
  return StringState(a * gradient_, a * f1_);
}

double support_full(const DualVector& xi, double horizon) {
  require_positive_horizon(horizon);
  auto trace = [&xi](double t) { return boundary_trace(xi, t); };
  return quadrature::integrate_abs(trace, 0.0, horizon, cells_for(xi, horizon));
}

double support_reduced(const DualVector& xi, double horizon) {
  require_reduced(xi);
  require_positive_horizon(horizon);
  const DualProfile profile(xi);
  auto zeta = [&profile](double t) { return profile.zeta(t); };
  return quadrature::integrate_abs(zeta, 0.0, horizon, cells_for(xi, horizon));
}

double support_normalized(const DualVector& xi, double horizon) {
  require_positive_horizon(horizon);
  const DualVector rescaled = xi.with_drift(xi.phi(0) / horizon);
  return support_full(rescaled, horizon) / horizon;
}

double limit_support_full(const DualVector& xi) {
  const DualProfile profile(xi);
  const double drift = xi.phi(0);
  if (drift == 0.0) {
    auto p = [&profile](double t) { return profile.periodic_part(t); };
    return quadrature::integrate_abs(p, 0.0, kTwoPi, cells_for(xi, kTwoPi)) / kTwoPi;
  }
  // Inner τ-integral ∫₀¹ |a + drift τ| dτ in closed form; the outer integrand
  // has kinks where a = 0 and where a + drift = 0.
  auto inner = [&profile, drift](double t) {
    const double a = profile.periodic_part(t);
    const double b = a + drift;
    if ((a >= 0.0) == (b >= 0.0)) return std::abs(a + 0.5 * drift);
    return (a * a + b * b) / (2.0 * std::abs(drift));
  };
  struct Shifted {
    const DualProfile* profile;
    double offset;
    double operator()(double t) const { return profile->periodic_part(t) + offset; }
  };
  const std::array<Shifted, 2> kinks{Shifted{&profile, 0.0}, Shifted{&profile, drift}};
  return quadrature::integrate_kinked(inner, kinks, 0.0, kTwoPi, cells_for(xi, kTwoPi)) /
         kTwoPi;
}

double limit_support_reduced(const DualVector& xi) {
  require_reduced(xi);
  return support_reduced(xi, kTwoPi) / kTwoPi;
}

double rho_of_field(const PiecewiseLinear& g, Problem problem) {
  switch (problem) {
    case Problem::kStopMoving: return kTwoPi * sup_norm(g, SupNorm::kPlain);
    case Problem::kDamping: return kTwoPi * sup_norm(g, SupNorm::kQuotient);
    case Problem::kCompleteStop: break;
  }
  throw std::invalid_argument("ρ is only available for the stop-moving and damping problems");
}

double rho_norm(const StringState& state, Problem problem) {
  return rho_of_field(state.g(), problem);
}

namespace {

// ∫ over segment s of f against cos(nx) (cosine=true) or sin(nx), in closed
// form. n = 0 with cosine=true is the plain integral.
double segment_moment(const Segment& s, double end, std::size_t n, bool cosine) {
  const double x0 = s.start;
  const double x1 = end;
  const double y0 = s.value;
  const double y1 = s.value + s.slope * (x1 - x0);
  if (n == 0) return cosine ? 0.5 * (y0 + y1) * (x1 - x0) : 0.0;
  const double k = static_cast<double>(n);
  if (cosine) {
    return (y1 * std::sin(k * x1) - y0 * std::sin(k * x0)) / k +
           s.slope * (std::cos(k * x1) - std::cos(k * x0)) / (k * k);
  }
  return -(y1 * std::cos(k * x1) - y0 * std::cos(k * x0)) / k +
         s.slope * (std::sin(k * x1) - std::sin(k * x0)) / (k * k);
}

}  // namespace

double pairing(const StringState& state, const DualVector& xi) {
  if (xi.phi(0) != 0.0) {
    throw std::invalid_argument("pairing needs φ₀ = 0; f₀ is only known up to a constant");
  }
  double total = 0.0;
  const PiecewiseLinear& f1 = state.f1();
  for (std::size_t i = 0; i < f1.size(); ++i) {
    const double end = f1.segment_end(i);
    for (std::size_t n = 0; n <= xi.order(); ++n) {
      if (xi.psi(n) != 0.0) total += xi.psi(n) * segment_moment(f1.segment(i), end, n, true);
    }
  }
  const PiecewiseLinear& grad = state.f0_gradient();
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double end = grad.segment_end(i);
    for (std::size_t n = 1; n <= xi.order(); ++n) {
      if (xi.phi(n) == 0.0) continue;
      total -= xi.phi(n) / static_cast<double>(n) *
               segment_moment(grad.segment(i), end, n, false);
    }
  }
  return total;
}

StringState extremal_state(const DualProfile& profile, Problem problem) {
  if (problem == Problem::kCompleteStop) {
    throw std::invalid_argument("extremal states exist for stop-moving and damping only");
  }
  const DualVector& xi = profile.dual();
  if (xi.is_zero()) throw std::invalid_argument("ζ vanishes identically; no extremal state");
  if (xi.phi(0) != 0.0) {
    throw std::invalid_argument("extremal state needs a periodic profile (φ₀ = 0)");
  }
  auto zeta = [&profile](double t) { return profile.zeta(t); };
  const std::vector<double> roots =
      quadrature::sign_change_roots(zeta, 0.0, kTwoPi, 4 * cells_for(xi, kTwoPi));

  std::vector<double> starts{0.0};
  for (double r : roots) {
    if (r - starts.back() > kBreakpointTolerance && r < kTwoPi - kBreakpointTolerance) {
      starts.push_back(r);
    }
  }
  std::vector<Segment> pieces;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const double end = i + 1 < starts.size() ? starts[i + 1] : kTwoPi;
    const double mid = zeta(0.5 * (starts[i] + end));
    pieces.push_back({starts[i], mid > 0.0 ? 1.0 : (mid < 0.0 ? -1.0 : 0.0), 0.0});
  }
  const PiecewiseLinear sign_zeta(kTwoPi, true, std::move(pieces));
  auto [even, odd] = even_odd_parts(sign_zeta);
  return StringState(-1.0 * odd, std::move(even));
}

StringState extremal_state(const DualVector& xi, Problem problem) {
  return extremal_state(DualProfile(xi), problem);
}

double membership_margin(const StringState& state, const ReachQuery& query,
                         std::span<const DualVector> sample) {
  if (sample.empty()) throw std::invalid_argument("membership needs a nonempty dual sample");
  double margin = -INFINITY;
  for (const DualVector& xi : sample) {
    double support = 0.0;
    switch (query.problem) {
      case Problem::kStopMoving:
        support = support_full(xi, query.horizon);
        break;
      case Problem::kDamping:
        support = support_reduced(xi, query.horizon);
        break;
      case Problem::kCompleteStop:
        throw std::invalid_argument(
            "membership for complete-stop needs the displacement constant, which is not tracked");
    }
    margin = std::max(margin, pairing(state, xi) - support);
  }
  return margin;
}

std::vector<DualVector> random_duals(std::size_t count, std::size_t order,
                                     std::uint64_t seed, DualKind kind) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<DualVector> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<double> phi(order + 1);
    std::vector<double> psi(order + 1);
    for (std::size_t n = 0; n <= order; ++n) {
      phi[n] = coeff(rng);
      psi[n] = coeff(rng);
    }
    if (kind != DualKind::kFull) phi[0] = 0.0;
    if (kind == DualKind::kReduced) psi[0] = 0.0;
    out.emplace_back(std::move(phi), std::move(psi));
  }
  return out;
}

}  // namespace stringctl
