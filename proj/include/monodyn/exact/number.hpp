#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace monodyn {

using Integer = mpz_class;
using Rational = mpq_class;

using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

int sign(const Rational& q);
int sign(const Integer& z);

Rational make_rational(const Integer& num, const Integer& den);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
Integer round_of(const Rational& q);

bool is_integer(const Rational& q);

/// Nearest multiple of 2^-bits (ties toward +inf).
Rational round_to_bits(const Rational& q, unsigned bits);

/// Rational bounds lo <= sqrt(q) <= hi with hi - lo <= 2^-bits. q >= 0.
Rational sqrt_lower(const Rational& q, unsigned bits);
Rational sqrt_upper(const Rational& q, unsigned bits);

/// Exact conversion of a finite double.
Rational from_double(double x);

/// Best rational approximation of x with denominator <= max_denominator,
/// by continued-fraction convergents and semiconvergents.
Rational rationalize(const Rational& x, const Integer& max_denominator);
Rational rationalize(double x, const Integer& max_denominator);

/// Correctly handles magnitudes beyond the double range by returning +-inf.
double to_double(const Rational& q);
double to_double(const Integer& z);

/// Natural logarithm of |z| for z != 0, valid for any magnitude.
double log_abs(const Integer& z);

Integer binomial(unsigned n, unsigned k);
Integer factorial(unsigned n);

/// Seeded generator whose output is identical on every platform. The engine
/// is std::mt19937_64; the standard distributions are implementation-defined,
/// so the range mappings are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi], by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform in [0, 1) with 53 random bits.
  double unit();

 private:
  std::mt19937_64 engine_;
};

}  // namespace monodyn
