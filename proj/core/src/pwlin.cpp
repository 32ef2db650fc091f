#include "stringctl/pwlin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stringctl {
namespace {

double value_at(const Segment& s, double x) {
  return s.value + s.slope * (x - s.start);
}

// Like locate(), but a breakpoint within kBreakpointTolerance to the right of
// y still counts as containing y. Used when building new functions whose
// breakpoints were computed by floating-point arithmetic.
std::size_t locate_tolerant(std::span<const Segment> segs, double y) {
  auto it = std::upper_bound(
      segs.begin(), segs.end(), y + kBreakpointTolerance,
      [](double v, const Segment& s) { return v < s.start; });
  if (it == segs.begin()) return 0;
  return static_cast<std::size_t>(std::distance(segs.begin(), it) - 1);
}

// Sorted, deduplicated copy of xs restricted to [0, length).
std::vector<double> unique_starts(std::vector<double> xs, double length) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (x < 0.0 || x >= length - kBreakpointTolerance) continue;
    if (!out.empty() && x - out.back() <= kBreakpointTolerance) continue;
    out.push_back(x);
  }
  if (out.empty() || out.front() != 0.0) {
    if (!out.empty() && out.front() <= kBreakpointTolerance) out.front() = 0.0;
    else out.insert(out.begin(), 0.0);
  }
  return out;
}

void require_same_domain(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  if (f.periodic() != g.periodic() ||
      std::abs(f.domain_length() - g.domain_length()) > kBreakpointTolerance) {
    throw std::invalid_argument("piecewise-linear functions live on different domains");
  }
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(double domain_length, bool periodic,
                                 std::vector<Segment> segments)
    : length_(domain_length), periodic_(periodic), segments_(std::move(segments)) {
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw std::invalid_argument("domain length must be positive and finite");
  }
  if (segments_.empty()) {
    throw std::invalid_argument("a piecewise-linear function needs at least one segment");
  }
  if (segments_.front().start != 0.0) {
    throw std::invalid_argument("first breakpoint must be 0");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (!std::isfinite(s.value) || !std::isfinite(s.slope)) {
      throw std::invalid_argument("segment coefficients must be finite");
    }
    if (!(s.start < length_)) {
      throw std::invalid_argument("breakpoint outside the domain");
    }
    if (i > 0 && !(s.start > segments_[i - 1].start)) {
      throw std::invalid_argument("breakpoints must be strictly increasing");
    }
  }
}

PiecewiseLinear PiecewiseLinear::constant(double value, double domain_length,
                                          bool periodic) {
  return PiecewiseLinear(domain_length, periodic, {{0.0, value, 0.0}});
}

PiecewiseLinear PiecewiseLinear::linear(double value_at_zero, double slope,
                                        double domain_length, bool periodic) {
  return PiecewiseLinear(domain_length, periodic, {{0.0, value_at_zero, slope}});
}

std::vector<double> PiecewiseLinear::breakpoints() const {
  std::vector<double> out;
  out.reserve(segments_.size());
  for (const Segment& s : segments_) out.push_back(s.start);
  return out;
}

double PiecewiseLinear::segment_end(std::size_t i) const {
  return i + 1 < segments_.size() ? segments_.at(i + 1).start : length_;
}

double PiecewiseLinear::right_limit(std::size_t i) const {
  return value_at(segments_.at(i), segment_end(i));
}

double PiecewiseLinear::midpoint_value(std::size_t i) const {
  return value_at(segments_.at(i), 0.5 * (segments_.at(i).start + segment_end(i)));
}

double PiecewiseLinear::reduce(double x) const noexcept {
  double r = std::fmod(x, length_);
  if (r < 0.0) r += length_;
  if (r >= length_) r = 0.0;
  return r;
}

std::size_t PiecewiseLinear::locate(double x) const {
  double y = x;
  if (periodic_) {
    y = reduce(x);
  } else if (!(x >= 0.0 && x <= length_)) {
    throw std::out_of_range("argument " + std::to_string(x) +
                            " outside the domain of a non-periodic function");
  }
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), y,
      [](double v, const Segment& s) { return v < s.start; });
  return static_cast<std::size_t>(std::distance(segments_.begin(), it) - 1);
}

double PiecewiseLinear::operator()(double x) const {
  const std::size_t i = locate(x);
  const double y = periodic_ ? reduce(x) : x;
  return value_at(segments_[i], y);
}

double eval(const PiecewiseLinear& f, double x) { return f(x); }

PiecewiseLinear combine(const PiecewiseLinear& f, const PiecewiseLinear& g,
                        double a, double b) {
  require_same_domain(f, g);
  std::vector<double> xs = f.breakpoints();
  const std::vector<double> gx = g.breakpoints();
  xs.insert(xs.end(), gx.begin(), gx.end());
  const std::vector<double> starts = unique_starts(std::move(xs), f.domain_length());

  std::vector<Segment> out;
  out.reserve(starts.size());
  for (double x : starts) {
    const Segment& sf = f.segments()[locate_tolerant(f.segments(), x)];
    const Segment& sg = g.segments()[locate_tolerant(g.segments(), x)];
    out.push_back({x, a * value_at(sf, x) + b * value_at(sg, x),
                   a * sf.slope + b * sg.slope});
  }
  return PiecewiseLinear(f.domain_length(), f.periodic(), std::move(out));
}

PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return combine(f, g, 1.0, 1.0);
}

PiecewiseLinear operator-(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  return combine(f, g, 1.0, -1.0);
}

PiecewiseLinear operator*(double a, const PiecewiseLinear& f) {
  std::vector<Segment> out(f.segments().begin(), f.segments().end());
  for (Segment& s : out) {
    s.value *= a;
    s.slope *= a;
  }
  return PiecewiseLinear(f.domain_length(), f.periodic(), std::move(out));
}

PiecewiseLinear add_constant(const PiecewiseLinear& f, double c) {
  std::vector<Segment> out(f.segments().begin(), f.segments().end());
  for (Segment& s : out) s.value += c;
  return PiecewiseLinear(f.domain_length(), f.periodic(), std::move(out));
}

PiecewiseLinear reflect(const PiecewiseLinear& f) {
  const double length = f.domain_length();
  std::vector<Segment> out;
  out.reserve(f.size());
  for (std::size_t k = f.size(); k-- > 0;) {
    const double start = length - f.segment_end(k);
    out.push_back({start, f.right_limit(k), -f.segment(k).slope});
  }
  out.front().start = 0.0;
  // Rounding in length - end can collapse two starts; keep the later one.
  std::vector<Segment> clean;
  clean.reserve(out.size());
  for (const Segment& s : out) {
    if (!clean.empty() && s.start - clean.back().start <= kBreakpointTolerance) {
      if (clean.size() == 1) {
        clean.back() = {0.0, value_at(s, 0.0), s.slope};
      } else {
        clean.back() = s;
      }
      continue;
    }
    clean.push_back(s);
  }
  return PiecewiseLinear(length, f.periodic(), std::move(clean));
}

std::pair<PiecewiseLinear, PiecewiseLinear> even_odd_parts(
    const PiecewiseLinear& f) {
  if (!f.periodic()) {
    throw std::invalid_argument("even/odd split needs a periodic function");
  }
  const PiecewiseLinear r = reflect(f);
  return {combine(f, r, 0.5, 0.5), combine(f, r, 0.5, -0.5)};
}

double sup_value(const PiecewiseLinear& f) {
  double hi = f.segment(0).value;
  for (std::size_t i = 0; i < f.size(); ++i) {
    hi = std::max({hi, f.segment(i).value, f.right_limit(i)});
  }
  return hi;
}

double inf_value(const PiecewiseLinear& f) {
  double lo = f.segment(0).value;
  for (std::size_t i = 0; i < f.size(); ++i) {
    lo = std::min({lo, f.segment(i).value, f.right_limit(i)});
  }
  return lo;
}

double sup_norm(const PiecewiseLinear& f, SupNorm kind) {
  const double hi = sup_value(f);
  const double lo = inf_value(f);
  if (kind == SupNorm::kQuotient) return 0.5 * (hi - lo);
  return std::max(std::abs(hi), std::abs(lo));
}

bool LevelRefinement::any_at_level() const {
  return std::any_of(bands.begin(), bands.end(), [](LevelBand b) {
    return b == LevelBand::kAtUpper || b == LevelBand::kAtLower;
  });
}

LevelRefinement refine_crossings(const PiecewiseLinear& f, double level) {
  if (!(level >= 0.0)) {
    throw std::invalid_argument("crossing level must be nonnegative");
  }
  std::vector<Segment> out;
  out.reserve(f.size() + 4);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Segment& s = f.segment(i);
    const double end = f.segment_end(i);
    out.push_back(s);
    if (s.slope == 0.0) continue;
    double roots[2];
    int count = 0;
    for (double target : {level, -level}) {
      const double r = s.start + (target - s.value) / s.slope;
      if (r > s.start + kBreakpointTolerance && r < end - kBreakpointTolerance) {
        roots[count++] = r;
      }
      if (level == 0.0) break;
    }
    if (count == 2 && roots[1] < roots[0]) std::swap(roots[0], roots[1]);
    for (int k = 0; k < count; ++k) {
      if (roots[k] - out.back().start <= kBreakpointTolerance) continue;
      out.push_back({roots[k], value_at(s, roots[k]), s.slope});
    }
  }

  PiecewiseLinear refined(f.domain_length(), f.periodic(), std::move(out));
  std::vector<LevelBand> bands;
  bands.reserve(refined.size());
  for (std::size_t i = 0; i < refined.size(); ++i) {
    const Segment& s = refined.segment(i);
    const double mid = refined.midpoint_value(i);
    const double drift = std::abs(s.slope) * (refined.segment_end(i) - s.start);
    const bool flat = drift <= kBreakpointTolerance;
    if (flat && std::abs(mid - level) <= kBreakpointTolerance) {
      bands.push_back(LevelBand::kAtUpper);
    } else if (flat && std::abs(mid + level) <= kBreakpointTolerance) {
      bands.push_back(LevelBand::kAtLower);
    } else if (mid > level) {
      bands.push_back(LevelBand::kAbove);
    } else if (mid < -level) {
      bands.push_back(LevelBand::kBelow);
    } else {
      bands.push_back(LevelBand::kInside);
    }
  }
  return {std::move(refined), std::move(bands)};
}

namespace {

double integrate_linear(double y0, double y1, double width, IntegralMode mode) {
  switch (mode) {
    case IntegralMode::kPlain:
      return 0.5 * (y0 + y1) * width;
    case IntegralMode::kAbs:
      if ((y0 >= 0.0) == (y1 >= 0.0) || y0 == 0.0 || y1 == 0.0) {
        return 0.5 * std::abs(y0 + y1) * width;
      }
      // Two triangles meeting at the zero crossing.
      return width * (y0 * y0 + y1 * y1) / (2.0 * (std::abs(y0) + std::abs(y1)));
    case IntegralMode::kSquare:
      return width * (y0 * y0 + y0 * y1 + y1 * y1) / 3.0;
  }
  return 0.0;
}

double integrate_within(const PiecewiseLinear& f, double lo, double hi,
                        IntegralMode mode) {
  double total = 0.0;
  for (std::size_t i = f.locate(lo); i < f.size(); ++i) {
    const Segment& s = f.segment(i);
    if (s.start >= hi) break;
    const double x0 = std::max(lo, s.start);
    const double x1 = std::min(hi, f.segment_end(i));
    if (x1 > x0) {
      total += integrate_linear(value_at(s, x0), value_at(s, x1), x1 - x0, mode);
    }
  }
  return total;
}

}  // namespace

double integrate(const PiecewiseLinear& f, double a, double b, IntegralMode mode) {
  if (b < a) throw std::invalid_argument("integration bounds are inverted");
  const double length = f.domain_length();
  if (!f.periodic()) {
    if (a < -kBreakpointTolerance || b > length + kBreakpointTolerance) {
      throw std::out_of_range("integration range outside a non-periodic domain");
    }
    return integrate_within(f, std::max(a, 0.0), std::min(b, length), mode);
  }
  if (b - a > length + kBreakpointTolerance) {
    throw std::invalid_argument("periodic integration range longer than one period");
  }
  if (b - a >= length - kBreakpointTolerance) {
    return integrate_within(f, 0.0, length, mode);
  }
  const double lo = f.reduce(a);
  const double hi = lo + (b - a);
  if (hi <= length) return integrate_within(f, lo, hi, mode);
  return integrate_within(f, lo, length, mode) +
         integrate_within(f, 0.0, hi - length, mode);
}

PiecewiseLinear translate(const PiecewiseLinear& f, double shift) {
  if (!f.periodic()) {
    throw std::invalid_argument("translation needs a periodic function");
  }
  const double length = f.domain_length();
  const double s = f.reduce(shift);
  if (s == 0.0) return f;
  std::vector<double> xs;
  xs.reserve(f.size() + 1);
  for (const Segment& seg : f.segments()) xs.push_back(f.reduce(seg.start - s));
  const std::vector<double> starts = unique_starts(std::move(xs), length);

  std::vector<Segment> out;
  out.reserve(starts.size());
  for (double x : starts) {
    double y = x + s;
    if (y >= length) y -= length;
    if (length - y <= kBreakpointTolerance) y = 0.0;
    const Segment& src = f.segments()[locate_tolerant(f.segments(), y)];
    out.push_back({x, value_at(src, y), src.slope});
  }
  return PiecewiseLinear(length, true, std::move(out));
}

PiecewiseLinear derivative(const PiecewiseLinear& f) {
  std::vector<Segment> out;
  out.reserve(f.size());
  for (const Segment& s : f.segments()) out.push_back({s.start, s.slope, 0.0});
  return PiecewiseLinear(f.domain_length(), f.periodic(), std::move(out));
}

PiecewiseLinear antiderivative(const PiecewiseLinear& f) {
  std::vector<Segment> out;
  out.reserve(f.size());
  double accumulated = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Segment& s = f.segment(i);
    if (s.slope != 0.0) {
      throw std::invalid_argument("antiderivative needs a piecewise-constant function");
    }
    out.push_back({s.start, accumulated, s.value});
    accumulated += s.value * (f.segment_end(i) - s.start);
  }
  if (f.periodic()) {
    const double scale = 1.0 + f.domain_length() * sup_norm(f, SupNorm::kPlain);
    if (std::abs(accumulated) > 1e-10 * scale) {
      throw std::domain_error("antiderivative of a periodic function with nonzero mean");
    }
  }
  return PiecewiseLinear(f.domain_length(), f.periodic(), std::move(out));
}

PiecewiseLinear window(const PiecewiseLinear& f, double start, double length) {
  if (f.periodic()) {
    throw std::invalid_argument("window reads a non-periodic function");
  }
  if (!(length > 0.0)) throw std::invalid_argument("window length must be positive");
  if (start + length > f.domain_length() + 1e-9) {
    throw std::out_of_range("window extends past the end of the function");
  }
  const double lo = std::max(start, 0.0);
  const double hi = start + length;
  std::vector<Segment> out;
  if (lo - start > kBreakpointTolerance) out.push_back({0.0, 0.0, 0.0});
  for (std::size_t i = f.locate(std::min(lo, f.domain_length())); i < f.size(); ++i) {
    const Segment& s = f.segment(i);
    if (s.start >= hi - kBreakpointTolerance && !out.empty()) break;
    const double x = std::max(s.start, lo);
    const double z = x - start;
    Segment piece{z, value_at(s, x), s.slope};
    if (out.empty()) {
      piece.start = 0.0;
      out.push_back(piece);
    } else if (z - out.back().start <= kBreakpointTolerance) {
      piece.start = out.back().start;
      piece.value = value_at(s, piece.start + start);
      out.back() = piece;
    } else {
      out.push_back(piece);
    }
  }
  return PiecewiseLinear(length, true, std::move(out));
}

PiecewiseLinear concatenate(std::span<const PiecewiseLinear> pieces) {
  if (pieces.empty()) throw std::invalid_argument("nothing to concatenate");
  std::vector<Segment> out;
  double offset = 0.0;
  for (const PiecewiseLinear& p : pieces) {
    for (const Segment& s : p.segments()) {
      out.push_back({s.start + offset, s.value, s.slope});
    }
    offset += p.domain_length();
  }
  return PiecewiseLinear(offset, false, std::move(out));
}

PiecewiseLinear simplified(const PiecewiseLinear& f, double tol) {
  std::vector<Segment> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Segment& s = f.segment(i);
    if (!out.empty()) {
      const Segment& last = out.back();
      const double joined = value_at(last, s.start);
      if (std::abs(last.slope - s.slope) <= tol && std::abs(joined - s.value) <= tol) {
        continue;
      }
    }
    out.push_back(s);
  }
  return PiecewiseLinear(f.domain_length(), f.periodic(), std::move(out));
}

}  // namespace stringctl
