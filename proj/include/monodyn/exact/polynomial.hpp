#pragma once

#include <string>
#include <utility>
#include <vector>

#include "monodyn/exact/number.hpp"

namespace monodyn {

/// Univariate polynomial over Q, coefficients stored low degree first with no
/// trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial monomial(const Rational& c, std::size_t degree);
  /// x - root
  static Polynomial linear(const Rational& root);

  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const Rational& leading() const { return c_.back(); }
  /// Coefficient of x^i (zero past the degree).
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  /// Same roots as p(-x).
  Polynomial reflect() const;

  /// Scaled to integer coefficients with content 1 and positive leading
  /// coefficient.
  std::vector<Integer> primitive_integer() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Euclidean division; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  bool divisible_by(const Polynomial& divisor) const;

  /// "x^2 - 3*x + 1".
  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd (zero if both are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// Yun's algorithm: returns factors f_1, f_2, ... (monic, squarefree,
/// pairwise coprime) with p = lc * prod f_i^i. Entries may be 1.
std::vector<Polynomial> squarefree_decomposition(const Polynomial& p);

}  // namespace monodyn
