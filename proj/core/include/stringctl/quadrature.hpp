#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace stringctl::quadrature {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule with n points, computed once per n and cached.
const Rule& gauss_legendre(std::size_t n);

// Root of a continuous f on [a, b] with f(a), f(b) of opposite signs, by
// bisection until the bracket stops shrinking or reaches `tol`.
template <class F>
double bisect_root(const F& f, double a, double b, double fa, double tol = 1e-15) {
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b || b - a <= tol * std::max(1.0, std::abs(m))) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Roots of f on (a, b) isolated by sign changes on a uniform grid of
// `subintervals` cells and refined by bisection. Tangential double roots that
// fall inside a single cell are not seen.
template <class F>
std::vector<double> sign_change_roots(const F& f, double a, double b,
                                      std::size_t subintervals) {
  std::vector<double> roots;
  const double h = (b - a) / static_cast<double>(subintervals);
  double x0 = a;
  double f0 = f(a);
  for (std::size_t i = 1; i <= subintervals; ++i) {
    const double x1 = i == subintervals ? b : a + h * static_cast<double>(i);
    const double f1 = f(x1);
    if (f0 != 0.0 && f1 != 0.0 && (f0 > 0.0) != (f1 > 0.0)) {
      roots.push_back(bisect_root(f, x0, x1, f0));
    } else if (f1 == 0.0 && i < subintervals) {
      roots.push_back(x1);
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

// Integral over [a, b] of an integrand that is smooth except where one of the
// `kinks` functions changes sign. The range is cut into `subintervals` cells;
// every cell where a kink function changes sign is split at the bisected root,
// and each smooth piece gets a 16-point Gauss rule.
template <class Integrand, class Kink, std::size_t K>
double integrate_kinked(const Integrand& integrand, const std::array<Kink, K>& kinks,
                        double a, double b, std::size_t subintervals) {
  const Rule& rule = gauss_legendre(16);
  auto gauss = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      s += rule.weights[q] * integrand(mid + half * rule.nodes[q]);
    }
    return s * half;
  };

  const double h = (b - a) / static_cast<double>(subintervals);
  std::array<double, K> left_values{};
  for (std::size_t k = 0; k < K; ++k) left_values[k] = kinks[k](a);

  double total = 0.0;
  std::vector<double> cuts;
  double x0 = a;
  for (std::size_t i = 1; i <= subintervals; ++i) {
    const double x1 = i == subintervals ? b : a + h * static_cast<double>(i);
    cuts.clear();
    for (std::size_t k = 0; k < K; ++k) {
      const double f1 = kinks[k](x1);
      const double f0 = left_values[k];
      if (f0 != 0.0 && f1 != 0.0 && (f0 > 0.0) != (f1 > 0.0)) {
        cuts.push_back(bisect_root(kinks[k], x0, x1, f0));
      }
      left_values[k] = f1;
    }
    std::sort(cuts.begin(), cuts.end());
    double lo = x0;
    for (double c : cuts) {
      if (c > lo) total += gauss(lo, c);
      lo = std::max(lo, c);
    }
    total += gauss(lo, x1);
    x0 = x1;
  }
  return total;
}

// ∫_a^b |f| for a smooth f, isolating the sign changes of f.
template <class F>
double integrate_abs(const F& f, double a, double b, std::size_t subintervals) {
  auto absf = [&f](double x) { return std::abs(f(x)); };
  auto kink = [&f](double x) { return f(x); };
  return integrate_kinked(absf, std::array<decltype(kink), 1>{kink}, a, b, subintervals);
}

}  // namespace stringctl::quadrature
