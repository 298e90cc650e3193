#pragma once

#include <optional>
#include <vector>

#include "monodyn/exact/number.hpp"
#include "monodyn/exact/polynomial.hpp"

namespace monodyn::spectral {

/// Gaussian rational re + i*im.
struct ComplexRational {
  Rational re;
  Rational im;

  Rational norm() const { return re * re + im * im; }
  ComplexRational conj() const { return {re, -im}; }
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

ComplexRational operator+(const ComplexRational& a, const ComplexRational& b);
ComplexRational operator-(const ComplexRational& a, const ComplexRational& b);
ComplexRational operator*(const ComplexRational& a, const ComplexRational& b);
/// Throws std::domain_error on division by zero.
ComplexRational operator/(const ComplexRational& a, const ComplexRational& b);

/// Disk {z : |z - center| <= radius} holding exactly one root.
struct RootEnclosure {
  ComplexRational center;
  Rational radius;
  /// Certified real: the root lies on the real axis (center.im == 0).
  bool real = false;
  /// Index (into the same result) of the disk holding the complex
  /// conjugate; equal to its own index for real roots.
  std::size_t conjugate = 0;
};

/// Isolates every root of a squarefree polynomial with rational
/// coefficients. Approximations come from Aberth iteration with all
/// arithmetic rounded to `bits` fractional bits; radii are then computed
/// exactly from the inclusion theorem
///   every connected union of the disks D(z_i, n |p(z_i) / (lc prod_{j!=i} (z_i - z_j))|)
///   formed by k disks holds exactly k roots,
/// so pairwise disjoint disks isolate. Returns nullopt when the disks at
/// this precision overlap or reality cannot be decided.
std::optional<std::vector<RootEnclosure>> isolate_roots(const Polynomial& squarefree, unsigned bits);

}  // namespace monodyn::spectral
