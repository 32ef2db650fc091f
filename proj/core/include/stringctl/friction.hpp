#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stringctl/problem.hpp"
#include "stringctl/pwlin.hpp"

namespace stringctl {

// Solution (φ, v) of φ + ½ v = y with v ∈ sign φ, sign 0 = [-1, 1]:
//   y >  ½ : (y - ½,  1)
//   y < -½ : (y + ½, -1)
//   else   : (0, 2y)
struct ScalarResolvent {
  double phi;
  double v;
};

ScalarResolvent scalar_resolvent(double y) noexcept;

struct PiecewiseResolvent {
  PiecewiseLinear phi;
  PiecewiseLinear v;
};

// The scalar resolvent applied segment by segment after refining the
// right-hand side at ±½. Segments that sit exactly at ±½ take the dead-zone
// branch, where v = 2·rhs is the value the equation forces.
PiecewiseResolvent pw_resolvent(const PiecewiseLinear& rhs);

// Boundary history of the dry-friction flow started from G, one record per
// 2π-interval. On interval m (global time t = 2πm + s) the record solves
//   φ_m(s) + ½ v_m(s) = G(s) - Σ_{j<m} v_j(s),
// and the control is u = -v.
class PhiTrack {
 public:
  struct Interval {
    PiecewiseLinear rhs;  // G - Σ_{j<m} v_j, which is also Φ_{2πm}(G)
    PiecewiseLinear phi;
    PiecewiseLinear v;
  };

  PhiTrack(PiecewiseLinear initial, double horizon, std::vector<Interval> intervals);

  const PiecewiseLinear& initial_field() const noexcept { return initial_; }
  std::span<const Interval> intervals() const noexcept { return intervals_; }
  double horizon() const noexcept { return horizon_; }
  // End of the last solved interval, 2π · (number of intervals).
  double covered() const noexcept;

  double phi(double t) const;
  double sign_value(double t) const;
  double control(double t) const;

  // u = -v on [0, covered()] as one non-periodic function.
  const PiecewiseLinear& control_function() const noexcept { return control_; }

 private:
  std::size_t interval_of(double t) const;

  PiecewiseLinear initial_;
  double horizon_;
  std::vector<Interval> intervals_;
  PiecewiseLinear control_;
};

// Solves whole 2π-intervals until the horizon is covered.
PhiTrack solve_track(const PiecewiseLinear& initial, double horizon);

// u(t) = -v_m(t - 2πm); t must lie in [0, horizon).
double control_of(const PhiTrack& track, double t);

// Worst-case violations of the track invariants, each computed exactly on the
// breakpoint partition or at segment samples.
struct TrackDiagnostics {
  double max_residual = 0.0;       // |φ_m + ½v_m + Σ_{j<m} v_j - G|
  double max_abs_v = 0.0;          // should not exceed 1
  double max_sign_mismatch = 0.0;  // |v - sign φ| where φ ≠ 0
  double max_phi_excess = 0.0;     // max(|φ| - |G|, 0)
};

TrackDiagnostics check_track(const PhiTrack& track);

// Field at time t from the transport formula
//   g(z, t) = G(z + t) + Σ_{k∈J} u(z + t + 2kπ),  J = {k : z + 2kπ ∈ [-t, 0)},
// for a control given as a non-periodic function covering [0, t].
PiecewiseLinear reconstruct(const PiecewiseLinear& initial,
                            const PiecewiseLinear& control, double t);

// Φ_t(G): the dry-friction flow.
PiecewiseLinear flow_map(const PiecewiseLinear& initial, double t);
// Φ_t(G) from an already solved track; t ≤ track.covered().
PiecewiseLinear flow_snapshot(const PhiTrack& track, double t);

// Open-loop transport with a supplied control, |u| ≤ 1 + 1e-12.
PiecewiseLinear apply_control(const PiecewiseLinear& initial,
                              const PiecewiseLinear& control, double horizon);

struct DecayReport {
  double rho0 = 0.0;
  double rhoT = 0.0;
  double rate = 0.0;
  std::vector<std::pair<double, double>> trace;  // (t, ρ(t))
};

// ρ along the dry-friction flow sampled every 2π and at T.
DecayReport decay_report(const PiecewiseLinear& initial, double horizon, Problem problem);

// Same report for an open-loop control.
DecayReport open_loop_decay(const PiecewiseLinear& initial,
                            const PiecewiseLinear& control, double horizon,
                            Problem problem);

}  // namespace stringctl
