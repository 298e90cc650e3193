#include "monodyn/exact/linalg.hpp"

#include <utility>

namespace monodyn {

namespace {

// Bareiss on an integer working copy; returns the determinant and leaves the
// copy in echelon form.
Integer bareiss_det(std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign_flip = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign_flip = -sign_flip;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Integer d = a[n - 1][n - 1];
  if (sign_flip < 0) d = -d;
  return d;
}

// Rows scaled to integers; returns the product of the row scale factors.
Integer clear_row_denominators(const RationalMatrix& m, std::vector<std::vector<Integer>>& out) {
  out.assign(m.rows(), std::vector<Integer>(m.cols()));
  Integer total = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational scaled = m(i, j) * l;
      out[i][j] = scaled.get_num();
    }
    total *= l;
  }
  return total;
}

void require_square(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) throw SizeMismatch(std::string(what) + ": matrix is not square");
}

}  // namespace

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

bool is_integral(const RationalMatrix& m) {
  for (const auto& q : m.data()) {
    if (q.get_den() != 1) return false;
  }
  return true;
}

IntegerMatrix to_integer(const RationalMatrix& m) {
  IntegerMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw OutOfRange("matrix entry " + to_string(m(i, j)) + " is not an integer");
      r(i, j) = m(i, j).get_num();
    }
  }
  return r;
}

void require_valid_map(const IntegerMatrix& m) {
  require_square(m.rows(), m.cols(), "map");
  if (m.rows() < 2 || m.rows() > static_cast<std::size_t>(kMaxDimension)) {
    throw SizeMismatch("dimension " + std::to_string(m.rows()) + " outside supported range [2, " +
                       std::to_string(kMaxDimension) + "]");
  }
}

Integer det(const IntegerMatrix& m) {
  require_square(m.rows(), m.cols(), "det");
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return bareiss_det(a);
}

Rational det(const RationalMatrix& m) {
  require_square(m.rows(), m.cols(), "det");
  std::vector<std::vector<Integer>> a;
  Integer scale = clear_row_denominators(m, a);
  return make_rational(bareiss_det(a), scale);
}

namespace {

template <typename T>
Matrix<T> submatrix(const Matrix<T>& m, const MultiIndex& rows, const MultiIndex& cols) {
  if (rows.size() != cols.size()) {
    throw SizeMismatch("minor needs |I| == |J|, got " + std::to_string(rows.size()) + " and " +
                       std::to_string(cols.size()));
  }
  if (rows.m() != static_cast<int>(m.rows()) || cols.m() != static_cast<int>(m.cols())) {
    throw SizeMismatch("multi-index ambient size does not match the matrix");
  }
  Matrix<T> s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      s(i, j) = m(static_cast<std::size_t>(rows[i] - 1), static_cast<std::size_t>(cols[j] - 1));
  return s;
}

}  // namespace

Rational minor(const RationalMatrix& m, const MultiIndex& rows, const MultiIndex& cols) {
  return det(submatrix(m, rows, cols));
}

Integer minor(const IntegerMatrix& m, const MultiIndex& rows, const MultiIndex& cols) {
  return det(submatrix(m, rows, cols));
}

std::size_t rank(const RationalMatrix& m) {
  std::vector<std::vector<Integer>> a;
  clear_row_denominators(m, a);
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = a[i][j] * a[r][c] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

RationalMatrix inverse(const RationalMatrix& m) {
  require_square(m.rows(), m.cols(), "inverse");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw SingularMatrix("matrix is singular");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

ExteriorMatrix::ExteriorMatrix(int m, int k, RationalMatrix entries)
    : m_(m), k_(k), entries_(std::move(entries)) {
  std::size_t n = binomial(static_cast<unsigned>(m), static_cast<unsigned>(k)).get_ui();
  if (entries_.rows() != n || entries_.cols() != n) throw SizeMismatch("exterior matrix has wrong size");
}

ExteriorMatrix exterior_power(const RationalMatrix& m, int k) {
  require_square(m.rows(), m.cols(), "exterior_power");
  const int n = static_cast<int>(m.rows());
  if (k < 1 || k > n) {
    throw OutOfRange("exterior power degree k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  auto labels = MultiIndex::all(k, n);
  RationalMatrix e(labels.size(), labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) e(i, j) = minor(m, labels[i], labels[j]);
  return ExteriorMatrix(n, k, std::move(e));
}

ExteriorMatrix exterior_power(const IntegerMatrix& m, int k) { return exterior_power(to_rational(m), k); }

namespace {

template <typename T>
Matrix<T> power_impl(Matrix<T> base, unsigned n) {
  require_square(base.rows(), base.cols(), "mat_pow");
  Matrix<T> result = Matrix<T>::identity(base.rows());
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace

IntegerMatrix mat_pow(const IntegerMatrix& m, unsigned n) { return power_impl(m, n); }
RationalMatrix mat_pow(const RationalMatrix& m, unsigned n) { return power_impl(m, n); }

CharPoly CharPoly::from_polynomial(const Polynomial& p) {
  Polynomial q = p.monic();
  std::vector<Rational> lower(q.coeffs().begin(), q.coeffs().end() - 1);
  return CharPoly(std::move(lower));
}

Polynomial CharPoly::polynomial() const {
  std::vector<Rational> c = phi_;
  c.emplace_back(1);
  return Polynomial(std::move(c));
}

bool CharPoly::integral() const {
  for (const auto& q : phi_) {
    if (q.get_den() != 1) return false;
  }
  return true;
}

RationalMatrix CharPoly::evaluate(const RationalMatrix& m) const {
  require_square(m.rows(), m.cols(), "CharPoly::evaluate");
  // Horner with matrix coefficients.
  const std::size_t n = m.rows();
  RationalMatrix acc = RationalMatrix::identity(n);
  for (std::size_t i = phi_.size(); i-- > 0;) {
    acc = acc * m + phi_[i] * RationalMatrix::identity(n);
  }
  return acc;
}

CharPoly char_poly(const RationalMatrix& m) {
  require_square(m.rows(), m.cols(), "char_poly");
  const std::size_t n = m.rows();
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RationalMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    RationalMatrix am = m * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<unsigned long>(k);
  }
  c.pop_back();
  return CharPoly(std::move(c));
}

CharPoly char_poly(const IntegerMatrix& m) { return char_poly(to_rational(m)); }
CharPoly char_poly(const ExteriorMatrix& m) { return char_poly(m.entries()); }

RationalMatrix companion(const CharPoly& p) {
  const std::size_t n = p.degree();
  RationalMatrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -p.lower_coeffs()[i];
  return c;
}

RationalMatrix change_of_basis(const RationalMatrix& a, std::span<const RationalVector> basis) {
  require_square(a.rows(), a.cols(), "change_of_basis");
  if (basis.size() != a.rows()) {
    throw SizeMismatch("basis has " + std::to_string(basis.size()) + " vectors, expected " +
                       std::to_string(a.rows()));
  }
  RationalMatrix v = RationalMatrix::from_columns(basis);
  if (v.rows() != a.rows()) throw SizeMismatch("basis vectors have the wrong length");
  if (det(v) == 0) throw SingularBasis("basis vectors are linearly dependent");
  return inverse(v) * a * v;
}

IntegerVector primitive_vector(std::span<const Rational> v) {
  Integer den = 1;
  bool nonzero = false;
  for (const auto& q : v) {
    if (q != 0) nonzero = true;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  if (!nonzero) throw ZeroVector("primitive vector of the zero vector");
  IntegerVector out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * den;
    out[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  for (auto& z : out) z /= g;
  return out;
}

}  // namespace monodyn
