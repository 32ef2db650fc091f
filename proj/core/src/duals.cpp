#include "stringctl/duals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace stringctl {
namespace {

// Σ_{n≥1} (c[n] cos nt + s[n]/n sin nt), with cos nt and sin nt produced by
// the angle-addition recurrence.
double harmonic_sum(const std::vector<double>& cos_coeff,
                    const std::vector<double>& sin_coeff, double t) {
  const std::size_t n_max = std::max(cos_coeff.size(), sin_coeff.size());
  if (n_max <= 1) return 0.0;
  const double c1 = std::cos(t);
  const double s1 = std::sin(t);
  double cn = c1;
  double sn = s1;
  double sum = 0.0;
  for (std::size_t n = 1; n < n_max; ++n) {
    if (n < cos_coeff.size()) sum += cos_coeff[n] * cn;
    if (n < sin_coeff.size()) sum += sin_coeff[n] / static_cast<double>(n) * sn;
    const double next_c = cn * c1 - sn * s1;
    sn = sn * c1 + cn * s1;
    cn = next_c;
  }
  return sum;
}

const std::vector<double> kEmpty;

}  // namespace

DualVector::DualVector(std::vector<double> phi, std::vector<double> psi)
    : phi_(std::move(phi)), psi_(std::move(psi)) {
  const std::size_t n = std::max({phi_.size(), psi_.size(), std::size_t{1}});
  phi_.resize(n, 0.0);
  psi_.resize(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(phi_[i]) || !std::isfinite(psi_[i])) {
      throw std::invalid_argument("dual coefficients must be finite");
    }
  }
}

DualVector DualVector::zeros(std::size_t n) {
  return DualVector(std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0));
}

bool DualVector::is_zero() const noexcept {
  auto zero = [](double v) { return v == 0.0; };
  return std::all_of(phi_.begin(), phi_.end(), zero) &&
         std::all_of(psi_.begin(), psi_.end(), zero);
}

DualVector DualVector::scaled(double a) const {
  DualVector out = *this;
  for (double& v : out.phi_) v *= a;
  for (double& v : out.psi_) v *= a;
  return out;
}

DualVector DualVector::with_zero_modes_removed() const {
  DualVector out = *this;
  out.phi_[0] = 0.0;
  out.psi_[0] = 0.0;
  return out;
}

DualVector DualVector::with_drift(double phi0) const {
  DualVector out = *this;
  out.phi_[0] = phi0;
  return out;
}

double DualVector::xi0(double x) const { return phi_[0] + harmonic_sum(phi_, kEmpty, x); }

double DualVector::xi1(double x) const { return psi_[0] + harmonic_sum(psi_, kEmpty, x); }

DualVector operator+(const DualVector& a, const DualVector& b) {
  const std::size_t n = std::max(a.phi_.size(), b.phi_.size());
  std::vector<double> phi(n, 0.0);
  std::vector<double> psi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    phi[i] = a.phi(i) + b.phi(i);
    psi[i] = a.psi(i) + b.psi(i);
  }
  return DualVector(std::move(phi), std::move(psi));
}

double boundary_trace(const DualVector& xi, double t) {
  return harmonic_sum(xi.psi(), xi.phi(), t) + xi.psi(0) + xi.phi(0) * t;
}

double DualProfile::zeta(double t) const { return boundary_trace(xi_, t); }

double DualProfile::xi1(double t) const { return xi_.xi1(t); }

double DualProfile::eta(double t) const {
  return harmonic_sum(kEmpty, xi_.phi(), t) + xi_.phi(0) * t;
}

double DualProfile::periodic_part(double t) const {
  return harmonic_sum(xi_.psi(), xi_.phi(), t) + xi_.psi(0);
}

DualProfile zeta_profile(const DualVector& xi) { return DualProfile(xi); }

std::string to_dual_text(const DualVector& xi) {
  std::string out = "#dual N=" + std::to_string(xi.order()) + "\n";
  char buf[96];
  for (std::size_t n = 0; n <= xi.order(); ++n) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", n, xi.phi(n), xi.psi(n));
    out += buf;
  }
  return out;
}

DualVector parse_dual_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long declared = -1;
  std::vector<double> phi;
  std::vector<double> psi;
  auto number = [](const std::string& s) {
    double v = 0.0;
    const char* b = s.data();
    while (*b == ' ') ++b;
    const auto [ptr, ec] = std::from_chars(b, s.data() + s.size(), v);
    if (ec != std::errc()) throw std::invalid_argument("malformed number '" + s + "' in dual text");
    (void)ptr;
    return v;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("#dual", 0) == 0) {
      const auto eq = line.find("N=");
      if (eq == std::string::npos) throw std::invalid_argument("dual header lacks N=");
      declared = std::stol(line.substr(eq + 2));
      if (declared < 0) throw std::invalid_argument("dual order must be nonnegative");
      phi.assign(static_cast<std::size_t>(declared) + 1, 0.0);
      psi.assign(static_cast<std::size_t>(declared) + 1, 0.0);
      continue;
    }
    if (line.front() == '#') continue;
    if (declared < 0) throw std::invalid_argument("dual text must start with a #dual header");
    std::istringstream fields(line);
    std::string a, b, c;
    if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') ||
        !std::getline(fields, c)) {
      throw std::invalid_argument("dual line needs n,phi_n,psi_n");
    }
    const long n = std::stol(a);
    if (n < 0 || n > declared) throw std::invalid_argument("dual mode index out of range");
    phi[static_cast<std::size_t>(n)] = number(b);
    psi[static_cast<std::size_t>(n)] = number(c);
  }
  if (declared < 0) throw std::invalid_argument("missing #dual header");
  return DualVector(std::move(phi), std::move(psi));
}

}  // namespace stringctl
