#pragma once

#include <span>
#include <vector>

#include "stringctl/pwlin.hpp"

namespace stringctl {

// E(g) = ½ ∫₀^{2π} g² for the first-order field.
double energy_first_order(const PiecewiseLinear& g);

// E(f) = ½‖f₁‖² + ½‖∂f₀/∂x‖² for cosine series f₀ = Σ aₙ cos nx and
// f₁ = Σ bₙ cos nx, by Parseval: ½π Σ_{n≥1} (bₙ² + n² aₙ²) + π b₀².
double energy_second_order(std::span<const double> f0_coeffs,
                           std::span<const double> f1_coeffs);

// ⟨v, Δu⟩ and ⟨∂v/∂x, ∂u/∂x⟩ for cosine series on (0, 2π). Their sum is zero.
double laplacian_pairing(std::span<const double> u, std::span<const double> v);
double gradient_pairing(std::span<const double> u, std::span<const double> v);

struct EnergyReport {
  std::vector<double> times;
  std::vector<double> values;
  bool monotone = true;
  // Largest E(t_{i+1}) - E(t_i); 0 with fewer than two times.
  double max_uptick = 0.0;
};

// E(Φ_t(G1) - Φ_t(G2)) on a nondecreasing time grid.
EnergyReport contraction_series(const PiecewiseLinear& g1, const PiecewiseLinear& g2,
                                std::span<const double> times);

}  // namespace stringctl
