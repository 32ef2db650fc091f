#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stringctl {

// An even dual vector ξ = (ξ₀, ξ₁) given by finite cosine series
//   ξ₀(x) = Σ phi[n] cos nx,   ξ₁(x) = Σ psi[n] cos nx,   n = 0..N.
class DualVector {
 public:
  DualVector() : phi_(1, 0.0), psi_(1, 0.0) {}
  DualVector(std::vector<double> phi, std::vector<double> psi);

  // All-zero vector with modes 0..n.
  static DualVector zeros(std::size_t n);

  std::size_t order() const noexcept { return phi_.size() - 1; }
  const std::vector<double>& phi() const noexcept { return phi_; }
  const std::vector<double>& psi() const noexcept { return psi_; }
  double phi(std::size_t n) const { return n < phi_.size() ? phi_[n] : 0.0; }
  double psi(std::size_t n) const { return n < psi_.size() ? psi_[n] : 0.0; }

  // Zero-mode coefficients vanish (the factor-space duals).
  bool reduced() const noexcept { return phi_[0] == 0.0 && psi_[0] == 0.0; }
  bool is_zero() const noexcept;

  DualVector scaled(double a) const;
  DualVector with_zero_modes_removed() const;
  DualVector with_drift(double phi0) const;

  double xi0(double x) const;
  double xi1(double x) const;

  friend DualVector operator+(const DualVector& a, const DualVector& b);

 private:
  std::vector<double> phi_;
  std::vector<double> psi_;
};

// Boundary value ξ₁(0, t) of the adjoint wave solution started from ξ:
//   Σ_{n≥1} (ψₙ cos nt + (φₙ/n) sin nt) + ψ₀ + φ₀ t.
double boundary_trace(const DualVector& xi, double t);

// The profile ζ(t) = ξ₁(t) + η(t), η(t) = ∫₀ᵗ ξ₀, which carries every
// support function below. ζ coincides with the boundary trace.
class DualProfile {
 public:
  explicit DualProfile(DualVector xi) : xi_(std::move(xi)) {}

  const DualVector& dual() const noexcept { return xi_; }
  double drift() const noexcept { return xi_.phi(0); }

  double zeta(double t) const;
  double xi1(double t) const;  // even part: Σ ψₙ cos nt
  double eta(double t) const;  // odd part: Σ (φₙ/n) sin nt + φ₀ t
  // ζ without the φ₀ t term; 2π-periodic.
  double periodic_part(double t) const;

  double operator()(double t) const { return zeta(t); }

 private:
  DualVector xi_;
};

DualProfile zeta_profile(const DualVector& xi);

// Dual-vector text format: "#dual N=<n>" then lines "n,phi_n,psi_n".
std::string to_dual_text(const DualVector& xi);
DualVector parse_dual_text(std::string_view text);

}  // namespace stringctl
