#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stringctl/duals.hpp"
#include "stringctl/problem.hpp"
#include "stringctl/pwlin.hpp"

namespace stringctl {

// A reachable-set question: which problem, and which horizon T > 0.
struct ReachQuery {
  ReachQuery(Problem problem, double horizon);

  Problem problem;
  double horizon;
};

// An even string state f = (f₀, f₁) on the circle, stored through the slope
// ∂f₀/∂x (odd) and the velocity f₁ (even). The displacement itself is only
// known up to a constant, which none of the problems here observe.
//
// g = ∂f₀/∂x + f₁ is the field that the dry-friction flow transports.
class StringState {
 public:
  StringState(PiecewiseLinear f0_gradient, PiecewiseLinear f1);

  // Splits a field into velocity (even part) and slope (odd part).
  static StringState from_field(const PiecewiseLinear& g);
  // f₀ must be continuous; its slope becomes the stored gradient.
  static StringState from_displacement(const PiecewiseLinear& f0,
                                       PiecewiseLinear f1);

  const PiecewiseLinear& f0_gradient() const noexcept { return gradient_; }
  const PiecewiseLinear& f1() const noexcept { return f1_; }
  const PiecewiseLinear& g() const noexcept { return g_; }

  // Zero-mean displacement. Requires a piecewise-constant gradient, so that
  // f₀ is itself piecewise linear.
  PiecewiseLinear f0() const;

  StringState scaled(double a) const;

 private:
  PiecewiseLinear gradient_;
  PiecewiseLinear f1_;
  PiecewiseLinear g_;
};

// Support function of the reachable set D(T): ∫₀ᵀ |ξ₁(0,t)| dt.
double support_full(const DualVector& xi, double horizon);

// Support function in the factor space (φ₀ = ψ₀ = 0): ∫₀ᵀ |ζ(t)| dt.
double support_reduced(const DualVector& xi, double horizon);

// Support function of the rescaled set C(T)D(T):
// (1/T) ∫₀ᵀ |Σ(ψₙ cos nt + φₙ/n sin nt) + ψ₀ + φ₀ t/T| dt.
double support_normalized(const DualVector& xi, double horizon);

// T → ∞ limits: the support functions of the limit bodies.
double limit_support_full(const DualVector& xi);
double limit_support_reduced(const DualVector& xi);

// ρ = 2π |g|∞ with the plain sup-norm (stop-moving) or the sup-norm modulo
// constants (damping). The complete-stop problem has no such formula here.
double rho_norm(const StringState& state, Problem problem);
double rho_of_field(const PiecewiseLinear& g, Problem problem);

// ⟨f, ξ⟩ = ∫₀^{2π} (f₀ξ₀ + f₁ξ₁) dx, evaluated in closed form segment by
// segment as ∫ f₁ξ₁ - ∫ (∂f₀/∂x) η. Needs φ₀ = 0, because f₀ is only known up
// to a constant.
double pairing(const StringState& state, const DualVector& xi);

// State on the boundary of the limit body that attains ⟨f, ξ⟩ = ρ(f) H_Ω(ξ):
// f₁ and -∂f₀/∂x are the even and odd parts of sign ζ.
StringState extremal_state(const DualProfile& profile, Problem problem);
StringState extremal_state(const DualVector& xi, Problem problem);

// max over the sample of ⟨f, ξ⟩ - H(ξ) for the support function of the
// queried problem at the queried horizon. A positive value certifies that f
// is not reachable from zero in time T; a nonpositive one is only consistent
// with reachability.
double membership_margin(const StringState& state, const ReachQuery& query,
                         std::span<const DualVector> sample);

enum class DualKind {
  kFull,        // every coefficient random
  kNoDrift,     // φ₀ = 0
  kReduced,     // φ₀ = ψ₀ = 0
};

// Seeded random dual vectors with coefficients uniform in [-1, 1] on modes
// 0..order.
std::vector<DualVector> random_duals(std::size_t count, std::size_t order,
                                     std::uint64_t seed, DualKind kind);

}  // namespace stringctl
