#pragma once

#include <vector>

#include "monodyn/exact/number.hpp"

namespace monodyn::geometry {

/// Supporting hyperplane normal . x = offset of a facet, normal primitive and
/// outward (normal . x <= offset on the hull).
struct HullFacet {
  IntegerVector normal;
  Rational offset;
};

struct HullData {
  /// Affine dimension of the point set.
  int dim = 0;
  /// Indices (into the input) of the hull vertices, in lexicographic order
  /// of the points.
  std::vector<std::size_t> vertices;
  /// One entry per facet; filled only for full-dimensional input.
  std::vector<HullFacet> facets;
  /// Lebesgue volume; zero unless full-dimensional.
  Rational volume;
};

/// Exact convex hull by a placing triangulation (beneath-beyond) on points
/// scaled to a common integer lattice. Lower-dimensional sets are handled in
/// coordinates of their affine hull. Throws DegeneratePolytope on empty input
/// and SizeMismatch on ragged input.
HullData compute_hull(const std::vector<RationalVector>& points);

}  // namespace monodyn::geometry
