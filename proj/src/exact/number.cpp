#include "monodyn/exact/number.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace monodyn {

namespace {

bool valid_integer_text(std::string_view t) {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view t) {
  while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
  return t;
}

Integer integer_from(std::string_view t) {
  if (!t.empty() && t[0] == '+') t.remove_prefix(1);
  return Integer(std::string(t), 10);
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto t = trim(text);
  if (!valid_integer_text(t)) {
    throw std::invalid_argument("not an integer: \"" + std::string(text) + "\"");
  }
  return integer_from(t);
}

Rational parse_rational(std::string_view text) {
  auto t = trim(text);
  auto slash = t.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(t));
  }
  auto num_text = trim(t.substr(0, slash));
  auto den_text = trim(t.substr(slash + 1));
  if (!valid_integer_text(num_text) || !valid_integer_text(den_text)) {
    throw std::invalid_argument("not a rational: \"" + std::string(text) + "\"");
  }
  Integer den = integer_from(den_text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator: \"" + std::string(text) + "\"");
  }
  return make_rational(integer_from(num_text), den);
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

int sign(const Rational& q) { return sgn(q); }
int sign(const Integer& z) { return sgn(z); }

Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round_of(const Rational& q) { return floor_of(q + Rational(1, 2)); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational round_to_bits(const Rational& q, unsigned bits) {
  Integer scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  Rational scaled = q * scale;
  return make_rational(round_of(scaled), scale);
}

Rational sqrt_lower(const Rational& q, unsigned bits) {
  if (sgn(q) < 0) throw std::domain_error("sqrt of negative rational");
  Integer scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  Integer t = floor_of(q * scale * scale);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  return make_rational(s, scale);
}

Rational sqrt_upper(const Rational& q, unsigned bits) {
  if (sgn(q) < 0) throw std::domain_error("sqrt of negative rational");
  Integer scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  Integer t = ceil_of(q * scale * scale);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  if (s * s < t) s += 1;
  return make_rational(s, scale);
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite double");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

Rational rationalize(const Rational& x, const Integer& max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("denominator bound must be >= 1");
  if (x.get_den() <= max_denominator) return x;
  // Convergents p/q of the continued fraction, kept as (p0/q0, p1/q1).
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = x;
  while (true) {
    Integer a = floor_of(rest);
    Integer q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  // Best semiconvergent between the last two convergents.
  Integer t = (max_denominator - q0) / q1;
  Rational semi = make_rational(p0 + t * p1, q0 + t * q1);
  Rational conv = make_rational(p1, q1);
  Rational d_semi = abs(semi - x);
  Rational d_conv = abs(conv - x);
  return d_semi < d_conv ? semi : conv;
}

Rational rationalize(double x, const Integer& max_denominator) {
  return rationalize(from_double(x), max_denominator);
}

double to_double(const Integer& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  if (exp > std::numeric_limits<double>::max_exponent) {
    return mant > 0 ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
  }
  return std::ldexp(mant, static_cast<int>(exp));
}

double to_double(const Rational& q) {
  if (sgn(q) == 0) return 0.0;
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  long e = en - ed;
  double ratio = mn / md;
  if (e > 2 * std::numeric_limits<double>::max_exponent) {
    return ratio > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
  }
  if (e < 2 * std::numeric_limits<double>::min_exponent) return 0.0;
  return std::ldexp(ratio, static_cast<int>(e));
}

double log_abs(const Integer& z) {
  if (z == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) {
    return static_cast<std::int64_t>(engine_());
  }
  std::uint64_t range = span + 1;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return lo + static_cast<std::int64_t>(draw % range);
}

double Rng::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace monodyn
