#ifndef RBDA_DOUBLE_DESCRIPTION_HPP
#define RBDA_DOUBLE_DESCRIPTION_HPP

#include <cstddef>
#include <vector>

#include "rbda/rational.hpp"

namespace rbda::dd {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Extreme rays of the cone {y in Q^d : A y >= 0}, computed by the double
/// description method with the combinatorial adjacency test. Every ray is
/// scaled so its largest absolute component is 1.
///
/// The cone must be pointed, i.e. A must have full column rank; otherwise
/// Error(unbounded) is thrown. Returns an empty list for the cone {0}.
std::vector<RationalVector> extreme_rays(const RationalMatrix& rows, std::size_t dimension);

}  // namespace rbda::dd

#endif  // RBDA_DOUBLE_DESCRIPTION_HPP
