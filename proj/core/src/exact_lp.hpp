#pragma once

#include <vector>

#include "bcleak/rational.hpp"

namespace bcleak::detail {

using RationalMatrix = std::vector<std::vector<Rational>>;

// True iff some x >= 0 satisfies a_eq x = b_eq and a_le x <= b_le.
// Phase-one simplex with Bland's rule; exact.
bool lp_feasible(const RationalMatrix& a_eq, const std::vector<Rational>& b_eq,
                 const RationalMatrix& a_le, const std::vector<Rational>& b_le, std::size_t n);

}  // namespace bcleak::detail
