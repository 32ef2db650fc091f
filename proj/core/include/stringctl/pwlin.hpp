#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stringctl {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Breakpoints closer than this are treated as one.
inline constexpr double kBreakpointTolerance = 1e-12;

// One linear piece, live on [start, next start). The value at x is
// value + slope * (x - start).
struct Segment {
  double start = 0.0;
  double value = 0.0;
  double slope = 0.0;
};

// A possibly discontinuous piecewise-linear function on [0, L).
//
// Periodic functions live on the circle R / L Z and evaluate any real
// argument after reduction. Non-periodic functions live on [0, L]; the last
// segment is closed at L. Segments are half-open and left-closed, so the
// value at a breakpoint is the value of the segment that starts there.
//
// Values are immutable once constructed.
class PiecewiseLinear {
 public:
  PiecewiseLinear(double domain_length, bool periodic,
                  std::vector<Segment> segments);

  static PiecewiseLinear constant(double value, double domain_length = kTwoPi,
                                  bool periodic = true);
  static PiecewiseLinear linear(double value_at_zero, double slope,
                                double domain_length = kTwoPi,
                                bool periodic = true);

  double domain_length() const noexcept { return length_; }
  bool periodic() const noexcept { return periodic_; }
  std::size_t size() const noexcept { return segments_.size(); }
  std::span<const Segment> segments() const noexcept { return segments_; }
  const Segment& segment(std::size_t i) const { return segments_.at(i); }
  std::vector<double> breakpoints() const;

  // End of segment i (next start, or the domain length for the last one).
  double segment_end(std::size_t i) const;
  // Limit of the segment-i formula at its right end.
  double right_limit(std::size_t i) const;
  double midpoint_value(std::size_t i) const;

  // Index of the segment whose half-open interval contains x. Periodic
  // inputs are reduced first; non-periodic inputs outside [0, L] throw.
  std::size_t locate(double x) const;
  double operator()(double x) const;

  // Reduces x into [0, L). Only meaningful for periodic functions.
  double reduce(double x) const noexcept;

 private:
  double length_;
  bool periodic_;
  std::vector<Segment> segments_;
};

double eval(const PiecewiseLinear& f, double x);

// a * f + b * g on the union of both breakpoint sets.
PiecewiseLinear combine(const PiecewiseLinear& f, const PiecewiseLinear& g,
                        double a, double b);

PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g);
PiecewiseLinear operator-(const PiecewiseLinear& f, const PiecewiseLinear& g);
PiecewiseLinear operator*(double a, const PiecewiseLinear& f);
PiecewiseLinear add_constant(const PiecewiseLinear& f, double c);

// x -> f(L - x), i.e. f(-x) on the circle.
PiecewiseLinear reflect(const PiecewiseLinear& f);

// Even and odd parts ½(f(x) ± f(-x)); periodic input only.
std::pair<PiecewiseLinear, PiecewiseLinear> even_odd_parts(
    const PiecewiseLinear& f);

enum class SupNorm {
  kPlain,     // sup |f|
  kQuotient,  // inf_c sup |f + c| = ½(sup f - inf f)
};

double sup_norm(const PiecewiseLinear& f, SupNorm kind);
double sup_value(const PiecewiseLinear& f);
double inf_value(const PiecewiseLinear& f);

// Position of a refined segment relative to the band [-level, level].
enum class LevelBand {
  kAbove,      // f > level in the open interior
  kAtUpper,    // f == level identically
  kInside,     // -level < f < level
  kAtLower,    // f == -level identically
  kBelow,      // f < -level
};

struct LevelRefinement {
  PiecewiseLinear function;
  std::vector<LevelBand> bands;  // one per segment of `function`

  bool any_at_level() const;
};

// Inserts breakpoints at every interior solution of f(x) = ±level so that on
// each output segment f - level and f + level keep a constant sign.
LevelRefinement refine_crossings(const PiecewiseLinear& f, double level);

enum class IntegralMode { kPlain, kAbs, kSquare };

// Integral of f, |f| or f² over [a, b]. Periodic functions accept b > L as
// long as b - a <= L.
double integrate(const PiecewiseLinear& f, double a, double b,
                 IntegralMode mode = IntegralMode::kPlain);

// x -> f(x + shift) on the circle.
PiecewiseLinear translate(const PiecewiseLinear& f, double shift);

// Piecewise-constant function of the slopes of f.
PiecewiseLinear derivative(const PiecewiseLinear& f);

// Continuous antiderivative F with F(0) = 0 of a piecewise-constant f. Throws
// if some segment has a nonzero slope (the result would be quadratic).
PiecewiseLinear antiderivative(const PiecewiseLinear& f);

// The periodic function z -> f(z + start) on [0, length), taking the value 0
// where z + start < 0. `f` must be non-periodic and defined up to
// start + length.
PiecewiseLinear window(const PiecewiseLinear& f, double start, double length);

// Joins consecutive pieces into one non-periodic function on the sum of
// their domains.
PiecewiseLinear concatenate(std::span<const PiecewiseLinear> pieces);

// Merges neighbouring segments that are continuous and collinear within tol.
PiecewiseLinear simplified(const PiecewiseLinear& f, double tol = 0.0);

// Text exchange format:
//   #pwl period=<P> periodic=<0|1>
//   <breakpoint>,<left_value>,<slope>
// Numbers are written with 17 significant digits so that parsing reproduces
// the same doubles.
std::string to_pwl_text(const PiecewiseLinear& f);
PiecewiseLinear parse_pwl_text(std::string_view text);
PiecewiseLinear read_pwl_file(const std::string& path);
void write_pwl_file(const std::string& path, const PiecewiseLinear& f);

}  // namespace stringctl
