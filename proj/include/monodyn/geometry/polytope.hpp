#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "monodyn/exact/matrix.hpp"
#include "monodyn/exact/number.hpp"
#include "monodyn/geometry/hull.hpp"

namespace monodyn::geometry {

using Point = RationalVector;

/// Convex polytope in V-representation: its vertices only, sorted
/// lexicographically. Built through convex_hull so the vertex list is always
/// minimal.
class Polytope {
 public:
  int ambient_dim() const noexcept { return ambient_; }
  int dim() const noexcept { return dim_; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }

  friend bool operator==(const Polytope&, const Polytope&) = default;
  friend Polytope convex_hull(std::span<const Point> points);

 private:
  int ambient_ = 0;
  int dim_ = 0;
  std::vector<Point> vertices_;
};

/// Throws DegeneratePolytope on empty input.
Polytope convex_hull(std::span<const Point> points);

/// Normalized so the unit cube has volume 1; zero when dim < ambient.
Rational volume(const Polytope& p);

/// Facet hyperplanes of a full-dimensional polytope (empty otherwise).
std::vector<HullFacet> facets(const Polytope& p);

/// Throws SizeMismatch for different ambient dimensions.
Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope scale(const Polytope& p, const Rational& r);
Polytope translate(const Polytope& p, const Point& t);
/// Throws SizeMismatch unless a is ambient x ambient.
Polytope linear_image(const RationalMatrix& a, const Polytope& p);

/// conv(0, e_1, ..., e_m)
Polytope standard_simplex(int m);
/// [0,1]^m
Polytope unit_cube(int m);
/// [0, u]
Polytope segment(const Point& u);
/// [0, u_1] + ... + [0, u_m]
Polytope zonotope(std::span<const Point> generators);

}  // namespace monodyn::geometry
