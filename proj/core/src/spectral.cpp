#include "stringctl/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "stringctl/pwlin.hpp"

namespace stringctl {

SpectralSet::SpectralSet(std::vector<SpectralEntry> entries, std::size_t truncation)
    : entries_(std::move(entries)), truncation_(truncation) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const SpectralEntry& e = entries_[i];
    if (!(e.mu > 0.0) || !std::isfinite(e.mu) || !std::isfinite(e.r.real()) ||
        !std::isfinite(e.r.imag())) {
      throw std::invalid_argument("spectral entries need finite μ > 0 and finite R");
    }
    if (i > 0 && !(e.mu > entries_[i - 1].mu)) {
      throw std::invalid_argument("spectral frequencies must be strictly increasing");
    }
  }
}

double SpectralSet::signal(double t) const {
  double sum = 0.0;
  for (const SpectralEntry& e : entries_) {
    sum += e.r.real() * std::cos(e.mu * t) - e.r.imag() * std::sin(e.mu * t);
  }
  return sum;
}

double secular_function(std::size_t n, double t) {
  double sum = 0.0;
  for (std::size_t k = n; k >= 1; --k) {
    const double kk = static_cast<double>(k);
    sum += 1.0 / (kk * kk - t);
  }
  return sum - 0.5 / t;
}

std::vector<double> secular_roots(std::size_t n) {
  if (n < 1) throw std::invalid_argument("secular_roots needs N ≥ 1");
  std::vector<double> roots;
  roots.reserve(n);
  // The secular function increases strictly between consecutive poles
  // 0, 1, 4, ..., N², going from -∞ to +∞, so each gap holds one root.
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    double lo = kk * kk;
    double hi = (kk + 1.0) * (kk + 1.0);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (secular_function(n, mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back(std::sqrt(0.5 * (lo + hi)));
  }
  return roots;
}

std::vector<double> limit_roots(std::size_t count) {
  if (count < 1) throw std::invalid_argument("limit_roots needs count ≥ 1");
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = static_cast<double>(k) + 0.5;
  return out;
}

EisensteinValue eisenstein_kernel(double mu, double x) {
  const double m = std::abs(mu);
  if (!std::isfinite(m) || !std::isfinite(x) || m == 0.0) {
    throw std::invalid_argument("eisenstein kernel needs finite nonzero μ and finite x");
  }
  if (std::abs(m - std::round(m)) < 1e-12) {
    throw std::domain_error("eisenstein kernel has a pole at integer μ");
  }
  constexpr std::size_t kTerms = 1'000'000;
  double y = std::fmod(std::abs(x), kTwoPi);
  // Σ cos ky / k² = π²/6 - πy/2 + y²/4 on [0, 2π].
  const double base = kPi * kPi / 6.0 - 0.5 * kPi * y + 0.25 * y * y;
  const double m2 = m * m;
  double rest = 0.0;
  for (std::size_t k = kTerms; k >= 1; --k) {
    const double kk = static_cast<double>(k);
    const double k2 = kk * kk;
    rest += std::cos(kk * y) / (k2 * (k2 - m2));
  }
  EisensteinValue out{};
  out.lhs = base + m2 * rest - 0.5 / m2;

  const double period = kTwoPi * m;
  const double r = std::fmod(std::abs(m * x), period);
  const double dist = std::min(r, period - r);
  out.rhs_closed = -std::sin(dist) / m;
  return out;
}

std::vector<double> modes_from_spectral(const SpectralSet& s, std::size_t k_max, double t) {
  if (k_max < 1) throw std::invalid_argument("modes_from_spectral needs K ≥ 1");
  std::vector<double> a(k_max, 0.0);
  for (const SpectralEntry& e : s.entries()) {
    const double weight = 2.0 * (e.r * std::polar(1.0, e.mu * t)).real();
    for (std::size_t k = 1; k <= k_max; ++k) {
      const double kk = static_cast<double>(k);
      if (std::abs(e.mu - kk) < 1e-12) {
        throw std::domain_error("spectral frequency collides with mode k = " + std::to_string(k));
      }
      a[k - 1] += weight / (kk * kk - e.mu * e.mu);
    }
  }
  return a;
}

Admissibility admissibility(const SpectralSet& s, std::span<const double> t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("admissibility needs a nonempty time grid");
  double worst = 0.0;
  for (double t : t_grid) worst = std::max(worst, std::abs(s.signal(t)));
  return {worst, worst <= 0.5 + 1e-12};
}

namespace {

SpectralSet weighted(const std::vector<double>& mus, std::span<const std::complex<double>> w,
                     std::size_t truncation) {
  std::vector<SpectralEntry> entries;
  for (std::size_t i = 0; i < w.size(); ++i) entries.push_back({mus[i], w[i]});
  return SpectralSet(std::move(entries), truncation);
}

bool half_integer(double mu) {
  const double twice = 2.0 * mu;
  const double nearest = std::round(twice);
  return std::abs(twice - nearest) < 1e-12 && std::fmod(nearest, 2.0) == 1.0;
}

}  // namespace

SpectralSet truncated_set(std::size_t n, std::span<const std::complex<double>> weights) {
  if (weights.size() > n) throw std::invalid_argument("more weights than secular roots");
  return weighted(secular_roots(n), weights, n);
}

SpectralSet limit_set(std::span<const std::complex<double>> weights) {
  if (weights.empty()) return SpectralSet();
  return weighted(limit_roots(weights.size()), weights, 0);
}

SingularFieldReport singular_field_check(const SpectralSet& u, std::span<const double> t_grid,
                                         std::span<const double> x_grid) {
  for (const SpectralEntry& e : u.entries()) {
    if (!half_integer(e.mu)) {
      throw std::invalid_argument("singular controls use half-integer frequencies only, got μ = " +
                                  std::to_string(e.mu));
    }
  }
  if (t_grid.empty()) throw std::invalid_argument("singular field check needs a time grid");
  SingularFieldReport rep;
  for (double t : t_grid) {
    const double now = u.signal(t);
    const double later = u.signal(t + kTwoPi);
    rep.antiperiodic_residual = std::max(rep.antiperiodic_residual, std::abs(later + now));
    // g(0⁺, t) = ½u(t) and g(2π⁻, t) = ½u(t + 2π).
    rep.boundary_residual = std::max(rep.boundary_residual, std::abs(0.25 * (now + later)));
    rep.max_abs_u = std::max(rep.max_abs_u, std::abs(now));
    for (double x : x_grid) {
      rep.max_abs_field = std::max(rep.max_abs_field, 0.5 * std::abs(u.signal(t + x)));
    }
  }
  rep.bounded = rep.max_abs_u <= 1.0 + 1e-12 && rep.max_abs_field <= 0.5 + 1e-12;
  return rep;
}

SpectralSet random_half_integer_set(std::size_t modes, double max_mu, double amplitude,
                                    std::uint64_t seed) {
  const auto available = static_cast<std::size_t>(std::floor(max_mu - 0.5 + 1e-12)) + 1;
  if (max_mu < 0.5 || modes < 1 || modes > available) {
    throw std::invalid_argument("not enough half-integer frequencies for the requested modes");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(available);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(modes);
  std::sort(idx.begin(), idx.end());

  std::uniform_real_distribution<double> mag(0.1, 1.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::vector<SpectralEntry> entries;
  double total = 0.0;
  for (std::size_t k : idx) {
    entries.push_back({static_cast<double>(k) + 0.5, std::polar(mag(rng), phase(rng))});
    total += std::abs(entries.back().r);
  }
  for (SpectralEntry& e : entries) e.r *= amplitude / total;
  return SpectralSet(std::move(entries));
}

std::string to_spectral_text(const SpectralSet& s) {
  std::string out;
  char buf[128];
  for (const SpectralEntry& e : s.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", e.mu, e.r.real(), e.r.imag());
    out += buf;
  }
  return out;
}

SpectralSet parse_spectral_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<SpectralEntry> entries;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    double v[3];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 3; ++i) {
      while (p < end && *p == ' ') ++p;
      auto [next, ec] = std::from_chars(p, end, v[i]);
      if (ec != std::errc()) throw std::invalid_argument("malformed spectral line '" + line + "'");
      p = next;
      while (p < end && *p == ' ') ++p;
      if (i < 2) {
        if (p == end || *p != ',') throw std::invalid_argument("spectral line needs mu,Re,Im");
        ++p;
      }
    }
    if (p != end) throw std::invalid_argument("trailing text in spectral line '" + line + "'");
    entries.push_back({v[0], {v[1], v[2]}});
  }
  return SpectralSet(std::move(entries));
}

}  // namespace stringctl
