#include "monodyn/exact/polynomial.hpp"

#include <stdexcept>

namespace monodyn {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(const Rational& root) { return Polynomial({-root, Rational(1)}); }

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Rational lc = leading();
  std::vector<Rational> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] / lc;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::reflect() const {
  std::vector<Rational> v = c_;
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return Polynomial(std::move(v));
}

std::vector<Integer> Polynomial::primitive_integer() const {
  if (is_zero()) return {};
  Integer den = 1;
  for (const auto& q : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> out(c_.size());
  Integer content = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Rational scaled = c_[i] * den;
    out[i] = scaled.get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out[i].get_mpz_t());
  }
  if (sgn(out.back()) < 0) content = -content;
  for (auto& z : out) z /= content;
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(v));
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x *= s;
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = c_;
  int dd = divisor.degree();
  int nd = degree();
  if (nd < dd) return {Polynomial(), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(nd - dd + 1));
  const Rational& lc = divisor.leading();
  for (int i = nd - dd; i >= 0; --i) {
    Rational q = rem[static_cast<std::size_t>(i + dd)] / lc;
    quot[static_cast<std::size_t>(i)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(i + j)] -= q * divisor.c_[static_cast<std::size_t>(j)];
    }
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

bool Polynomial::divisible_by(const Polynomial& divisor) const {
  return divmod(divisor).second.is_zero();
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    bool unit = mag == 1 && i > 0;
    if (!unit) s += to_string(mag);
    if (i > 0) {
      if (!unit) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<Polynomial> squarefree_decomposition(const Polynomial& p) {
  if (p.degree() < 1) return {};
  Polynomial f = p.monic();
  std::vector<Polynomial> out;
  Polynomial df = f.derivative();
  Polynomial a = gcd(f, df);
  Polynomial b = f.divmod(a).first;
  Polynomial c = df.divmod(a).first;
  Polynomial d = c - b.derivative();
  while (b.degree() > 0) {
    Polynomial g = gcd(b, d);
    out.push_back(g);
    b = b.divmod(g).first;
    c = d.divmod(g).first;
    d = c - b.derivative();
  }
  return out;
}

}  // namespace monodyn
