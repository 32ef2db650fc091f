#include "stringctl/friction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stringctl/reach.hpp"

namespace stringctl {

ScalarResolvent scalar_resolvent(double y) noexcept {
  if (y > 0.5) return {y - 0.5, 1.0};
  if (y < -0.5) return {y + 0.5, -1.0};
  return {0.0, 2.0 * y};
}

PiecewiseResolvent pw_resolvent(const PiecewiseLinear& rhs) {
  const LevelRefinement refined = refine_crossings(rhs, 0.5);
  const auto segs = refined.function.segments();
  std::vector<Segment> phi;
  std::vector<Segment> v;
  phi.reserve(segs.size());
  v.reserve(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    switch (refined.bands[i]) {
      case LevelBand::kAbove:
        phi.push_back({s.start, s.value - 0.5, s.slope});
        v.push_back({s.start, 1.0, 0.0});
        break;
      case LevelBand::kBelow:
        phi.push_back({s.start, s.value + 0.5, s.slope});
        v.push_back({s.start, -1.0, 0.0});
        break;
      case LevelBand::kAtUpper:
      case LevelBand::kInside:
      case LevelBand::kAtLower:
        phi.push_back({s.start, 0.0, 0.0});
        v.push_back({s.start, 2.0 * s.value, 2.0 * s.slope});
        break;
    }
  }
  const double len = rhs.domain_length();
  return {PiecewiseLinear(len, rhs.periodic(), std::move(phi)),
          PiecewiseLinear(len, rhs.periodic(), std::move(v))};
}

namespace {

void require_circle_field(const PiecewiseLinear& g) {
  if (!g.periodic() || std::abs(g.domain_length() - kTwoPi) > kBreakpointTolerance) {
    throw std::invalid_argument("initial field must be 2π-periodic");
  }
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("time must be finite and nonnegative");
  }
}

PiecewiseLinear build_control(std::span<const PhiTrack::Interval> intervals) {
  std::vector<PiecewiseLinear> pieces;
  pieces.reserve(intervals.size());
  for (const auto& iv : intervals) pieces.push_back(-1.0 * iv.v);
  return concatenate(pieces);
}

}  // namespace

PhiTrack::PhiTrack(PiecewiseLinear initial, double horizon, std::vector<Interval> intervals)
    : initial_(std::move(initial)),
      horizon_(horizon),
      intervals_(std::move(intervals)),
      control_(build_control(intervals_)) {}

double PhiTrack::covered() const noexcept {
  return kTwoPi * static_cast<double>(intervals_.size());
}

std::size_t PhiTrack::interval_of(double t) const {
  if (!(t >= 0.0) || t > covered()) {
    throw std::out_of_range("time outside the solved track");
  }
  const auto m = static_cast<std::size_t>(std::floor(t / kTwoPi));
  return std::min(m, intervals_.size() - 1);
}

namespace {

// Value at local time s ∈ [0, 2π]; s = 2π gives the left limit at the end.
double local_value(const PiecewiseLinear& f, double s) {
  if (s >= kTwoPi) return f.right_limit(f.size() - 1);
  return f(s);
}

}  // namespace

double PhiTrack::phi(double t) const {
  const std::size_t m = interval_of(t);
  return local_value(intervals_[m].phi, t - kTwoPi * static_cast<double>(m));
}

double PhiTrack::sign_value(double t) const {
  const std::size_t m = interval_of(t);
  return local_value(intervals_[m].v, t - kTwoPi * static_cast<double>(m));
}

double PhiTrack::control(double t) const { return -sign_value(t); }

PhiTrack solve_track(const PiecewiseLinear& initial, double horizon) {
  require_circle_field(initial);
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("track horizon must be positive");
  }
  const auto count = static_cast<std::size_t>(std::ceil(horizon / kTwoPi - 1e-12));
  std::vector<PhiTrack::Interval> intervals;
  intervals.reserve(count);
  PiecewiseLinear rhs = initial;
  for (std::size_t m = 0; m < std::max<std::size_t>(count, 1); ++m) {
    PiecewiseResolvent res = pw_resolvent(rhs);
    PiecewiseLinear next = simplified(rhs - res.v, kBreakpointTolerance);
    intervals.push_back({std::move(rhs), std::move(res.phi), std::move(res.v)});
    rhs = std::move(next);
  }
  return PhiTrack(initial, horizon, std::move(intervals));
}

double control_of(const PhiTrack& track, double t) {
  if (!(t >= 0.0) || !(t < track.horizon())) {
    throw std::out_of_range("control requested outside [0, T)");
  }
  return track.control(t);
}

TrackDiagnostics check_track(const PhiTrack& track) {
  TrackDiagnostics d;
  const PiecewiseLinear& g = track.initial_field();
  PiecewiseLinear sum_v = PiecewiseLinear::constant(0.0);
  for (const auto& iv : track.intervals()) {
    const PiecewiseLinear residual = iv.phi + 0.5 * iv.v + sum_v - g;
    d.max_residual = std::max(d.max_residual, sup_norm(residual, SupNorm::kPlain));
    d.max_abs_v = std::max(d.max_abs_v, sup_norm(iv.v, SupNorm::kPlain));

    // Sample φ, v and G inside every piece of their common partition.
    const PiecewiseLinear partition = combine(combine(iv.phi, iv.v, 1.0, 0.0), g, 1.0, 0.0);
    for (std::size_t i = 0; i < partition.size(); ++i) {
      const double a = partition.segment(i).start;
      const double b = partition.segment_end(i);
      for (double w : {0.125, 0.5, 0.875}) {
        const double x = a + w * (b - a);
        const double p = iv.phi(x);
        const double v = iv.v(x);
        if (std::abs(p) > 1e-12) {
          d.max_sign_mismatch = std::max(d.max_sign_mismatch, std::abs(v - std::copysign(1.0, p)));
        }
        d.max_phi_excess = std::max(d.max_phi_excess, std::abs(p) - std::abs(g(x)));
      }
    }
    sum_v = sum_v + iv.v;
  }
  return d;
}

PiecewiseLinear reconstruct(const PiecewiseLinear& initial, const PiecewiseLinear& control,
                            double t) {
  require_circle_field(initial);
  require_time(t);
  if (t == 0.0) return initial;
  if (control.periodic()) throw std::invalid_argument("control must be a non-periodic function");
  if (control.domain_length() < t - 1e-9) {
    throw std::invalid_argument("control does not cover [0, t]");
  }
  PiecewiseLinear field = translate(initial, t);
  // Term j collects the boundary input that entered j periods ago.
  for (std::size_t j = 1;; ++j) {
    const double start = t - kTwoPi * static_cast<double>(j);
    if (start + kTwoPi <= kBreakpointTolerance) break;
    const double usable = std::min(start, control.domain_length() - kTwoPi);
    field = field + window(control, usable, kTwoPi);
  }
  return simplified(field, kBreakpointTolerance);
}

PiecewiseLinear flow_map(const PiecewiseLinear& initial, double t) {
  require_time(t);
  if (t == 0.0) return initial;
  return flow_snapshot(solve_track(initial, t), t);
}

PiecewiseLinear flow_snapshot(const PhiTrack& track, double t) {
  require_time(t);
  if (t > track.covered() + 1e-12) throw std::out_of_range("snapshot beyond the solved track");
  return reconstruct(track.initial_field(), track.control_function(), t);
}

PiecewiseLinear apply_control(const PiecewiseLinear& initial, const PiecewiseLinear& control,
                              double horizon) {
  if (sup_norm(control, SupNorm::kPlain) > 1.0 + 1e-12) {
    throw std::invalid_argument("control exceeds the bound |u| ≤ 1");
  }
  return reconstruct(initial, control, horizon);
}

namespace {

std::vector<double> report_times(double horizon) {
  std::vector<double> times;
  for (std::size_t k = 0;; ++k) {
    const double t = kTwoPi * static_cast<double>(k);
    if (t >= horizon - 1e-12) break;
    times.push_back(t);
  }
  times.push_back(horizon);
  return times;
}

template <class Snapshot>
DecayReport build_report(double horizon, Problem problem, Snapshot snapshot) {
  DecayReport r;
  for (double t : report_times(horizon)) {
    r.trace.emplace_back(t, rho_of_field(snapshot(t), problem));
  }
  r.rho0 = r.trace.front().second;
  r.rhoT = r.trace.back().second;
  r.rate = (r.rho0 - r.rhoT) / horizon;
  return r;
}

}  // namespace

DecayReport decay_report(const PiecewiseLinear& initial, double horizon, Problem problem) {
  const PhiTrack track = solve_track(initial, horizon);
  return build_report(horizon, problem,
                      [&track](double t) { return flow_snapshot(track, t); });
}

DecayReport open_loop_decay(const PiecewiseLinear& initial, const PiecewiseLinear& control,
                            double horizon, Problem problem) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  return build_report(horizon, problem, [&](double t) {
    return t == 0.0 ? initial : apply_control(initial, control, t);
  });
}

}  // namespace stringctl
