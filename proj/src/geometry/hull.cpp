#include "monodyn/geometry/hull.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

#include "monodyn/error.hpp"
#include "monodyn/exact/linalg.hpp"

namespace monodyn::geometry {

namespace {

using Index = std::uint32_t;
using Simplex = std::vector<Index>;

Integer dot(const IntegerVector& a, const IntegerVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Facet {
  Simplex verts;  // sorted
  IntegerVector normal;  // primitive, outward
  Integer scale;  // |det(p - v0, v1 - v0, ...)| = scale * (normal . p - offset)
  Integer offset;
  bool alive = true;
};

// Incremental echelon basis over Q used to find affinely independent points
// and pivot coordinates.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  // Adds v if independent of the basis; returns true when added.
  bool add(RationalVector v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational c = v[pivots_[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] -= c * rows_[r][j];
    }
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0) ++p;
    if (p == dim_) return false;
    Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (auto& row : rows_) {
      const Rational c = row[p];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) row[j] -= c * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  std::vector<std::size_t> pivots() const {
    auto p = pivots_;
    std::sort(p.begin(), p.end());
    return p;
  }

 private:
  std::size_t dim_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

class PlacingHull {
 public:
  PlacingHull(const std::vector<IntegerVector>& pts, std::size_t d) : pts_(pts), d_(d) {}

  void run(const std::vector<Index>& initial) {
    interior_.assign(d_, 0);
    for (Index i : initial)
      for (std::size_t c = 0; c < d_; ++c) interior_[c] += pts_[i][c];
    for (std::size_t skip = 0; skip < initial.size(); ++skip) {
      Simplex s;
      for (std::size_t j = 0; j < initial.size(); ++j)
        if (j != skip) s.push_back(initial[j]);
      add_facet(std::move(s));
    }
    {
      const Facet& f = facets_[0];
      Index opposite = initial[0];
      volume_ = f.scale * abs(dot(f.normal, pts_[opposite]) - f.offset);
    }
    std::set<Index> used(initial.begin(), initial.end());
    for (Index p = 0; p < pts_.size(); ++p) {
      if (used.count(p)) continue;
      insert(p);
    }
  }

  const Integer& volume_times_factorial() const { return volume_; }
  const std::vector<Facet>& facets() const { return facets_; }

 private:
  void add_facet(Simplex verts) {
    std::sort(verts.begin(), verts.end());
    Facet f;
    f.verts = verts;
    // Cofactor expansion of the (d-1) x d edge matrix.
    const IntegerVector& base = pts_[verts[0]];
    IntegerVector n(d_);
    for (std::size_t col = 0; col < d_; ++col) {
      IntegerMatrix sub(d_ - 1, d_ - 1);
      for (std::size_t r = 1; r < d_; ++r) {
        std::size_t cc = 0;
        for (std::size_t c = 0; c < d_; ++c) {
          if (c == col) continue;
          sub(r - 1, cc++) = pts_[verts[r]][c] - base[c];
        }
      }
      Integer m = det(sub);
      n[col] = (col % 2) ? Integer(-m) : m;
    }
    Integer g = 0;
    for (const auto& x : n) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) throw Error("degenerate facet in hull construction");
    for (auto& x : n) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    Integer off = dot(n, base);
    // interior_ is (d+1) times an interior point.
    if (dot(n, interior_) > Integer(static_cast<long>(d_ + 1)) * off) {
      for (auto& x : n) x = -x;
      off = -off;
    }
    f.normal = std::move(n);
    f.offset = off;
    f.scale = g;
    const int id = static_cast<int>(facets_.size());
    for (std::size_t t = 0; t < verts.size(); ++t) {
      Simplex ridge = verts;
      ridge.erase(ridge.begin() + static_cast<long>(t));
      auto& slot = ridges_.try_emplace(ridge, std::array<int, 2>{-1, -1}).first->second;
      if (slot[0] < 0) slot[0] = id;
      else slot[1] = id;
    }
    facets_.push_back(std::move(f));
  }

  void drop_from_ridges(int id) {
    const Simplex& verts = facets_[static_cast<std::size_t>(id)].verts;
    for (std::size_t t = 0; t < verts.size(); ++t) {
      Simplex ridge = verts;
      ridge.erase(ridge.begin() + static_cast<long>(t));
      auto it = ridges_.find(ridge);
      if (it == ridges_.end()) continue;
      auto& slot = it->second;
      if (slot[0] == id) {
        slot[0] = slot[1];
        slot[1] = -1;
      } else if (slot[1] == id) {
        slot[1] = -1;
      }
      if (slot[0] < 0) ridges_.erase(it);
    }
  }

  void insert(Index p) {
    std::vector<int> visible;
    std::vector<char> is_visible(facets_.size(), 0);
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      const Facet& f = facets_[i];
      if (!f.alive) continue;
      Integer h = dot(f.normal, pts_[p]) - f.offset;
      if (h > 0) {
        visible.push_back(static_cast<int>(i));
        is_visible[i] = 1;
        volume_ += f.scale * h;
      }
    }
    if (visible.empty()) return;
    std::vector<Simplex> horizon;
    for (int id : visible) {
      const Simplex verts = facets_[static_cast<std::size_t>(id)].verts;
      for (std::size_t t = 0; t < verts.size(); ++t) {
        Simplex ridge = verts;
        ridge.erase(ridge.begin() + static_cast<long>(t));
        const auto& slot = ridges_.at(ridge);
        int other = slot[0] == id ? slot[1] : slot[0];
        if (other < 0 || !is_visible[static_cast<std::size_t>(other)]) horizon.push_back(ridge);
      }
    }
    for (int id : visible) {
      drop_from_ridges(id);
      facets_[static_cast<std::size_t>(id)].alive = false;
    }
    for (auto& ridge : horizon) {
      ridge.push_back(p);
      add_facet(std::move(ridge));
    }
  }

  const std::vector<IntegerVector>& pts_;
  std::size_t d_;
  IntegerVector interior_;
  std::vector<Facet> facets_;
  std::map<Simplex, std::array<int, 2>> ridges_{};
  Integer volume_ = 0;
};

}  // namespace

HullData compute_hull(const std::vector<RationalVector>& points) {
  if (points.empty()) throw DegeneratePolytope("convex hull of an empty point set");
  const std::size_t amb = points[0].size();
  for (const auto& p : points)
    if (p.size() != amb) throw SizeMismatch("points of different dimensions");

  // Distinct points in lexicographic order.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t a, std::size_t b) { return points[a] == points[b]; }),
              order.end());

  HullData out;
  EchelonBasis basis(amb);
  std::vector<std::size_t> initial{0};
  for (std::size_t i = 1; i < order.size() && basis.rank() < amb; ++i) {
    RationalVector diff(amb);
    for (std::size_t c = 0; c < amb; ++c) diff[c] = points[order[i]][c] - points[order[0]][c];
    if (basis.add(std::move(diff))) initial.push_back(i);
  }
  const std::size_t r = basis.rank();
  out.dim = static_cast<int>(r);
  out.volume = 0;

  if (r == 0) {
    out.vertices = {order[0]};
    return out;
  }
  const auto pivots = basis.pivots();
  Integer lcm = 1;
  for (std::size_t i : order)
    for (std::size_t c : pivots) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), points[i][c].get_den_mpz_t());
  std::vector<IntegerVector> pts;
  pts.reserve(order.size());
  for (std::size_t i : order) {
    IntegerVector v(r);
    for (std::size_t c = 0; c < r; ++c) {
      Rational s = points[i][pivots[c]] * lcm;
      v[c] = s.get_num();
    }
    pts.push_back(std::move(v));
  }

  if (r == 1) {
    // order is lexicographic, but the single pivot coordinate decides.
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    std::vector<std::size_t> v{order[static_cast<std::size_t>(lo - pts.begin())],
                               order[static_cast<std::size_t>(hi - pts.begin())]};
    std::sort(v.begin(), v.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    out.vertices = v;
    if (amb == 1) {
      out.volume = abs(points[v[1]][0] - points[v[0]][0]);
      out.facets = {{IntegerVector{-1}, -points[v[0]][0]}, {IntegerVector{1}, points[v[1]][0]}};
    }
    return out;
  }

  std::vector<Index> init;
  for (std::size_t i : initial) init.push_back(static_cast<Index>(i));
  PlacingHull hull(pts, r);
  hull.run(init);

  // Distinct facet hyperplanes and the normals incident to each point.
  std::map<IntegerVector, Integer> planes;
  std::map<Index, std::set<IntegerVector>> incident;
  for (const Facet& f : hull.facets()) {
    if (!f.alive) continue;
    planes.emplace(f.normal, f.offset);
    for (Index v : f.verts) incident[v].insert(f.normal);
  }
  for (const auto& [idx, normals] : incident) {
    if (normals.size() < r) continue;
    RationalMatrix m(normals.size(), r);
    std::size_t row = 0;
    for (const auto& n : normals) {
      for (std::size_t c = 0; c < r; ++c) m(row, c) = Rational(n[c]);
      ++row;
    }
    if (rank(m) == r) out.vertices.push_back(order[idx]);
  }
  std::sort(out.vertices.begin(), out.vertices.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });

  if (r == amb) {
    out.volume = make_rational(hull.volume_times_factorial(), factorial(static_cast<unsigned>(r)));
    Integer scale = 1;
    for (std::size_t i = 0; i < r; ++i) scale *= lcm;
    out.volume /= Rational(scale);
    for (const auto& [n, off] : planes) out.facets.push_back({n, make_rational(off, lcm)});
  }
  return out;
}

}  // namespace monodyn::geometry
