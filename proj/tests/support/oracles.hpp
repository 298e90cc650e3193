#pragma once

// Test-only reference computations. Nothing here may call the library routine
// it is used to check.

#include <algorithm>
#include <numeric>
#include <vector>

#include "monodyn/exact/matrix.hpp"
#include "monodyn/exact/number.hpp"

namespace monodyn::oracle {

/// Leibniz expansion over all permutations.
template <typename T>
T leibniz_det(const Matrix<T>& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  T total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    T term = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    total += (inversions % 2) ? T(-term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Laplace expansion along the first row.
template <typename T>
T cofactor_det(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  T total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix<T> sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        sub(i - 1, cc++) = m(i, j);
      }
    }
    T term = m(0, c) * cofactor_det(sub);
    total += (c % 2) ? T(-term) : term;
  }
  return total;
}

/// Naive product, independent of Matrix::operator*.
template <typename T>
Matrix<T> naive_product(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T s = 0;
      for (std::size_t l = 0; l < a.cols(); ++l) s += a(i, l) * b(l, j);
      c(i, j) = s;
    }
  return c;
}

inline IntegerMatrix random_integer_matrix(Rng& rng, std::size_t n, long lo, long hi) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng.uniform(lo, hi));
  return m;
}

inline RationalMatrix random_rational_matrix(Rng& rng, std::size_t n, long lo, long hi, long max_den) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = make_rational(Integer(static_cast<long>(rng.uniform(lo, hi))),
                              Integer(static_cast<long>(rng.uniform(1, max_den))));
  return m;
}

/// det(x I - M) sampled at x = 0..n and interpolated (Lagrange), giving the
/// characteristic polynomial coefficients low degree first.
inline std::vector<Rational> charpoly_by_interpolation(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Rational> xs(n + 1), ys(n + 1);
  for (std::size_t s = 0; s <= n; ++s) {
    xs[s] = static_cast<long>(s);
    RationalMatrix shifted(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) shifted(i, j) = (i == j ? xs[s] : Rational(0)) - m(i, j);
    ys[s] = cofactor_det(shifted);
  }
  std::vector<Rational> coeffs(n + 1);
  for (std::size_t s = 0; s <= n; ++s) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t t = 0; t <= n; ++t) {
      if (t == s) continue;
      std::vector<Rational> next(basis.size() + 1);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] += basis[i];
        next[i] -= basis[i] * xs[t];
      }
      basis = next;
      denom *= xs[s] - xs[t];
    }
    for (std::size_t i = 0; i < basis.size(); ++i) coeffs[i] += ys[s] * basis[i] / denom;
  }
  return coeffs;
}

/// Area of the convex hull of planar points by Andrew's monotone chain and
/// the shoelace formula; also returns the hull vertices in counterclockwise
/// order.
inline std::pair<Rational, std::vector<RationalVector>> planar_hull_area(std::vector<RationalVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return {Rational(0), pts};
  auto cross = [](const RationalVector& o, const RationalVector& a, const RationalVector& b) -> Rational {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<RationalVector> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  Rational twice = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h[i];
    const auto& b = h[(i + 1) % h.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return {abs(twice) / 2, h};
}

/// deg_1 of f_A on P^m from the support function of A Delta: each facet of
/// the simplex contributes the largest value of its outer normal on
/// conv(0, a_1, ..., a_m).
inline Integer projective_deg1(const IntegerMatrix& a) {
  Integer total = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer best = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) best = std::max<Integer>(best, -a(i, j));
    total += best;
  }
  Integer best = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j);
    best = std::max<Integer>(best, s);
  }
  return total + best;
}

/// Strictly totally positive Vandermonde matrix (x_i^j) for distinct sorted
/// positive nodes.
inline IntegerMatrix stp_vandermonde(Rng& rng, int n) {
  std::vector<long> nodes;
  while (static_cast<int>(nodes.size()) < n) {
    long x = rng.uniform(1, 7);
    if (std::find(nodes.begin(), nodes.end(), x) == nodes.end()) nodes.push_back(x);
  }
  std::sort(nodes.begin(), nodes.end());
  IntegerMatrix v(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Integer p = 1;
    for (int j = 0; j < n; ++j) {
      v(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = p;
      p *= nodes[static_cast<std::size_t>(i)];
    }
  }
  return v;
}

}  // namespace monodyn::oracle
