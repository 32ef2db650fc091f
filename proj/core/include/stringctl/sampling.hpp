#pragma once

#include <cstddef>
#include <cstdint>

#include "stringctl/pwlin.hpp"

namespace stringctl {

// Seeded random 2π-periodic field with `pieces` segments on sorted random
// breakpoints (the first at 0), rescaled so that sup |G| = sup_target.
// Values and slopes are drawn independently, so jumps are generic.
PiecewiseLinear random_field(std::uint64_t seed, std::size_t pieces, double sup_target);

enum class ControlShape {
  kLinear,    // segment end values uniform in [-1, 1]
  kConstant,  // one uniform value in [-1, 1] per segment
  kBangBang,  // ±1 per segment
};

// Seeded random admissible control: non-periodic on [0, horizon] with
// `pieces` segments, |u| ≤ 1 throughout.
PiecewiseLinear random_control(std::uint64_t seed, double horizon, std::size_t pieces,
                               ControlShape shape = ControlShape::kLinear);

}  // namespace stringctl
