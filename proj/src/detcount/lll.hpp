#pragma once

#include <vector>

#include "numeric/rational.hpp"

namespace pfc {

using IntVector = std::vector<BigInt>;

// LLL reduction (delta = 3/4) of linearly independent integer row vectors,
// with exact rational Gram-Schmidt data.
std::vector<IntVector> lll_reduce(std::vector<IntVector> basis, const Rational& delta = Rational(3, 4));

BigInt squared_norm(const IntVector& v);

}  // namespace pfc
