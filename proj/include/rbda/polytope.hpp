#ifndef RBDA_POLYTOPE_HPP
#define RBDA_POLYTOPE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "rbda/elicitation.hpp"

namespace rbda {

using WeightVector = std::vector<double>;

/// Feasible attribute weights in both representations. Vertices are
/// deduplicated and sorted lexicographically; an empty vertex list means
/// the constraints are inconsistent.
struct WeightPolytope {
  ConstraintSystem constraints;
  std::vector<WeightVector> vertices;

  bool empty() const { return vertices.empty(); }
  std::size_t dimension() const { return constraints.dimension; }
};

/// Eliminates k_n through sum(k) = 1, homogenises the remaining system and
/// runs the exact double description method. Throws Error(unbounded) if the
/// feasible set is not bounded (possible only with nonnegativity disabled).
WeightPolytope enumerate_vertices(const ConstraintSystem& constraints);

struct SupportValue {
  double min = 0.0;
  double max = 0.0;
  std::size_t argmin = 0;  // indices into WeightPolytope::vertices
  std::size_t argmax = 0;
};

/// Extrema of direction . k over the polytope. Throws on an empty polytope
/// or a direction of the wrong length.
SupportValue support_function(const WeightPolytope& polytope, std::span<const double> direction);

}  // namespace rbda

#endif  // RBDA_POLYTOPE_HPP
