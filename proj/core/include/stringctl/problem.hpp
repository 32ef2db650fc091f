#pragma once

#include <string_view>

namespace stringctl {

// Terminal manifolds for steering the string: the zero state, the states at
// rest (constant displacement, zero velocity), or any pair of constants.
enum class Problem {
  kCompleteStop,
  kStopMoving,
  kDamping,
};

// Accepts "complete-stop", "stop-moving" and "damping".
Problem parse_problem(std::string_view name);
std::string_view to_string(Problem p) noexcept;

}  // namespace stringctl
