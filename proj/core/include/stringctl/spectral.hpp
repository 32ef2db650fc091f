#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stringctl {

struct SpectralEntry {
  double mu;
  std::complex<double> r;
};

// Frequencies μ > 0 with complex weights R_μ. Only positive frequencies are
// stored; R_{-μ} is the conjugate of R_μ, so the real signal is
// Σ Re(R_μ e^{iμt}).
class SpectralSet {
 public:
  SpectralSet() = default;
  explicit SpectralSet(std::vector<SpectralEntry> entries, std::size_t truncation = 0);

  std::span<const SpectralEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  // Truncation order N for finite-N experiments; 0 for the limit problem.
  std::size_t truncation() const noexcept { return truncation_; }

  double signal(double t) const;

 private:
  std::vector<SpectralEntry> entries_;
  std::size_t truncation_ = 0;
};

// The N positive roots of Σ_{k=1..N} 1/(k² - μ²) = 1/(2μ²), ascending. Root k
// (from 0) has μ² in (k², (k+1)²).
std::vector<double> secular_roots(std::size_t n);

// Left side minus right side of the secular equation at μ² = t.
double secular_function(std::size_t n, double t);

// {½, 3/2, ..., count - ½}.
std::vector<double> limit_roots(std::size_t count);

struct EisensteinValue {
  double lhs;
  double rhs_closed;
};

// lhs = Σ_{k≥1} cos kx / (k² - μ²) - 1/(2μ²), summed to 10⁶ terms after
// splitting off Σ cos kx / k², which has a closed form; the remaining tail is
// below μ²/(3·10¹⁸).
// rhs_closed = -(1/|μ|) sin ‖μx‖_μ with ‖y‖_μ = inf_n |y + 2πμn|.
EisensteinValue eisenstein_kernel(double mu, double x);

// a_k(t) = 2 Σ Re(R_μ e^{iμt}) / (k² - μ²) for k = 1..K.
std::vector<double> modes_from_spectral(const SpectralSet& s, std::size_t k_max,
                                        double t = 0.0);

struct Admissibility {
  double max_abs;
  bool admissible;  // max_abs ≤ ½ + 1e-12
};

Admissibility admissibility(const SpectralSet& s, std::span<const double> t_grid);

// Weights on the secular roots of order N, or on the limit half-integers.
SpectralSet truncated_set(std::size_t n, std::span<const std::complex<double>> weights);
SpectralSet limit_set(std::span<const std::complex<double>> weights);

struct SingularFieldReport {
  double antiperiodic_residual = 0.0;  // max |u(t + 2π) + u(t)|
  double boundary_residual = 0.0;      // max |½(g(0⁺,t) + g(2π⁻,t))|, g = ½u(t+x)
  double max_abs_u = 0.0;
  double max_abs_field = 0.0;          // max |g(x,t)| over both grids
  bool bounded = false;                // |u| ≤ 1 + 1e-12 and |g| ≤ ½ + 1e-12

  bool passed(double tol = 1e-10) const {
    return antiperiodic_residual < tol && boundary_residual < tol && bounded;
  }
};

// Checks a singular control u(t) = Σ Re(R_μ e^{iμt}) built from half-integer
// frequencies. Throws for any frequency that is not of the form k + ½.
SingularFieldReport singular_field_check(const SpectralSet& u, std::span<const double> t_grid,
                                         std::span<const double> x_grid);

// Seeded control on `modes` distinct frequencies drawn from {½, 3/2, ...,
// max_mu}, scaled so that Σ|R_μ| = amplitude and hence |u| ≤ amplitude.
SpectralSet random_half_integer_set(std::size_t modes, double max_mu, double amplitude,
                                    std::uint64_t seed);

// One `mu,Re(R),Im(R)` line per entry.
std::string to_spectral_text(const SpectralSet& s);
SpectralSet parse_spectral_text(std::string_view text);

}  // namespace stringctl
