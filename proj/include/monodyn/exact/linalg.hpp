#pragma once

#include <span>
#include <vector>

#include "monodyn/exact/matrix.hpp"
#include "monodyn/exact/multi_index.hpp"
#include "monodyn/exact/number.hpp"
#include "monodyn/exact/polynomial.hpp"

namespace monodyn {

/// Largest matrix dimension the library accepts.
inline constexpr int kMaxDimension = 8;

/// Throws SizeMismatch unless m is square with 2 <= dim <= kMaxDimension.
void require_valid_map(const IntegerMatrix& m);

/// Fraction-free (Bareiss) elimination. Rows are cleared of denominators
/// first, so all pivoting arithmetic stays in Z.
Integer det(const IntegerMatrix& m);
Rational det(const RationalMatrix& m);

Rational minor(const RationalMatrix& m, const MultiIndex& rows, const MultiIndex& cols);
Integer minor(const IntegerMatrix& m, const MultiIndex& rows, const MultiIndex& cols);

std::size_t rank(const RationalMatrix& m);

/// Throws SingularMatrix if det == 0.
RationalMatrix inverse(const RationalMatrix& m);

/// C(m,k) x C(m,k) matrix of k x k minors; row I, column J hold the minor with
/// rows I and columns J, with multi-indices in lexicographic order.
class ExteriorMatrix {
 public:
  ExteriorMatrix() = default;
  ExteriorMatrix(int m, int k, RationalMatrix entries);

  int m() const noexcept { return m_; }
  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return entries_.rows(); }
  const RationalMatrix& entries() const noexcept { return entries_; }
  const Rational& operator()(const MultiIndex& rows, const MultiIndex& cols) const {
    return entries_(rows.rank(), cols.rank());
  }
  std::vector<MultiIndex> labels() const { return MultiIndex::all(k_, m_); }

  friend bool operator==(const ExteriorMatrix&, const ExteriorMatrix&) = default;

 private:
  int m_ = 0;
  int k_ = 0;
  RationalMatrix entries_;
};

ExteriorMatrix exterior_power(const RationalMatrix& m, int k);
ExteriorMatrix exterior_power(const IntegerMatrix& m, int k);

/// Binary exponentiation; M^0 = I.
IntegerMatrix mat_pow(const IntegerMatrix& m, unsigned n);
RationalMatrix mat_pow(const RationalMatrix& m, unsigned n);

/// Monic characteristic polynomial r^L + phi_{L-1} r^{L-1} + ... + phi_0.
class CharPoly {
 public:
  CharPoly() = default;
  /// phi_0 .. phi_{L-1}.
  explicit CharPoly(std::vector<Rational> lower) : phi_(std::move(lower)) {}
  static CharPoly from_polynomial(const Polynomial& p);

  std::size_t degree() const noexcept { return phi_.size(); }
  const std::vector<Rational>& lower_coeffs() const noexcept { return phi_; }
  Polynomial polynomial() const;
  bool integral() const;

  /// Substitutes a square matrix: M^L + phi_{L-1} M^{L-1} + ... + phi_0 I.
  RationalMatrix evaluate(const RationalMatrix& m) const;

  friend bool operator==(const CharPoly&, const CharPoly&) = default;

 private:
  std::vector<Rational> phi_;
};

/// Faddeev-LeVerrier over Q.
CharPoly char_poly(const RationalMatrix& m);
CharPoly char_poly(const IntegerMatrix& m);
CharPoly char_poly(const ExteriorMatrix& m);

/// Companion matrix whose characteristic polynomial is p.
RationalMatrix companion(const CharPoly& p);

/// B with A V = V B, V having the basis vectors as columns. Throws
/// SingularBasis when the vectors are dependent.
RationalMatrix change_of_basis(const RationalMatrix& a, std::span<const RationalVector> basis);

/// First lattice point on the ray R_+ v. Throws ZeroVector for v = 0.
IntegerVector primitive_vector(std::span<const Rational> v);

}  // namespace monodyn
