#include "monodyn/geometry/polytope.hpp"

#include "monodyn/error.hpp"

namespace monodyn::geometry {

Polytope convex_hull(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  HullData h = compute_hull(pts);
  Polytope p;
  p.ambient_ = static_cast<int>(pts[0].size());
  p.dim_ = h.dim;
  for (std::size_t i : h.vertices) p.vertices_.push_back(pts[i]);
  return p;
}

Rational volume(const Polytope& p) {
  if (p.dim() < p.ambient_dim()) return 0;
  return compute_hull(p.vertices()).volume;
}

std::vector<HullFacet> facets(const Polytope& p) {
  if (p.dim() < p.ambient_dim()) return {};
  return compute_hull(p.vertices()).facets;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw SizeMismatch("Minkowski sum of polytopes in different dimensions");
  std::vector<Point> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const Point& a : p.vertices())
    for (const Point& b : q.vertices()) {
      Point s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      sums.push_back(std::move(s));
    }
  return convex_hull(sums);
}

Polytope scale(const Polytope& p, const Rational& r) {
  std::vector<Point> pts = p.vertices();
  for (auto& v : pts)
    for (auto& x : v) x *= r;
  return convex_hull(pts);
}

Polytope translate(const Polytope& p, const Point& t) {
  if (static_cast<int>(t.size()) != p.ambient_dim()) throw SizeMismatch("translation vector has wrong dimension");
  std::vector<Point> pts = p.vertices();
  for (auto& v : pts)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += t[i];
  return convex_hull(pts);
}

Polytope linear_image(const RationalMatrix& a, const Polytope& p) {
  const auto m = static_cast<std::size_t>(p.ambient_dim());
  if (a.rows() != m || a.cols() != m) throw SizeMismatch("linear image needs a square matrix of the ambient size");
  std::vector<Point> pts;
  pts.reserve(p.vertices().size());
  for (const Point& v : p.vertices()) pts.push_back(a * v);
  return convex_hull(pts);
}

Polytope standard_simplex(int m) {
  std::vector<Point> pts(1, Point(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i) {
    Point e(static_cast<std::size_t>(m));
    e[static_cast<std::size_t>(i)] = 1;
    pts.push_back(std::move(e));
  }
  return convex_hull(pts);
}

Polytope unit_cube(int m) {
  std::vector<Point> pts;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    Point v(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    pts.push_back(std::move(v));
  }
  return convex_hull(pts);
}

Polytope segment(const Point& u) {
  std::vector<Point> pts{Point(u.size()), u};
  return convex_hull(pts);
}

Polytope zonotope(std::span<const Point> generators) {
  if (generators.empty()) throw DegeneratePolytope("zonotope needs at least one generator");
  Polytope z = segment(generators[0]);
  for (std::size_t i = 1; i < generators.size(); ++i) z = minkowski_sum(z, segment(generators[i]));
  return z;
}

}  // namespace monodyn::geometry
