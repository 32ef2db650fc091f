#include "stringctl/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace stringctl {
namespace {

std::vector<double> sorted_starts(std::mt19937_64& rng, double length, std::size_t pieces) {
  std::uniform_real_distribution<double> pos(0.0, length);
  std::vector<double> starts{0.0};
  while (starts.size() < pieces) {
    const double x = pos(rng);
    const bool clash = std::any_of(starts.begin(), starts.end(), [&](double s) {
      return std::abs(s - x) < 1e-6 * length;
    });
    if (!clash) starts.push_back(x);
  }
  std::sort(starts.begin(), starts.end());
  return starts;
}

}  // namespace

PiecewiseLinear random_field(std::uint64_t seed, std::size_t pieces, double sup_target) {
  if (pieces < 1) throw std::invalid_argument("random field needs at least one piece");
  if (!(sup_target > 0.0)) throw std::invalid_argument("random field needs a positive sup");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Segment> segs;
  for (double s : sorted_starts(rng, kTwoPi, pieces)) segs.push_back({s, unit(rng), unit(rng)});
  PiecewiseLinear raw(kTwoPi, true, std::move(segs));
  const double sup = sup_norm(raw, SupNorm::kPlain);
  if (sup == 0.0) return PiecewiseLinear::constant(sup_target);
  return (sup_target / sup) * raw;
}

PiecewiseLinear random_control(std::uint64_t seed, double horizon, std::size_t pieces,
                               ControlShape shape) {
  if (pieces < 1) throw std::invalid_argument("random control needs at least one piece");
  if (!(horizon > 0.0)) throw std::invalid_argument("random control needs a positive horizon");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::vector<double> starts = sorted_starts(rng, horizon, pieces);
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const double end = i + 1 < starts.size() ? starts[i + 1] : horizon;
    const double a = unit(rng);
    switch (shape) {
      case ControlShape::kLinear:
        segs.push_back({starts[i], a, (unit(rng) - a) / (end - starts[i])});
        break;
      case ControlShape::kConstant:
        segs.push_back({starts[i], a, 0.0});
        break;
      case ControlShape::kBangBang:
        segs.push_back({starts[i], a < 0.0 ? -1.0 : 1.0, 0.0});
        break;
    }
  }
  return PiecewiseLinear(horizon, false, std::move(segs));
}

}  // namespace stringctl
