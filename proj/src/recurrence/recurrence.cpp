#include "monodyn/recurrence/recurrence.hpp"

#include <algorithm>

#include "monodyn/error.hpp"

namespace monodyn::recurrence {

std::string to_string(RecurrenceStatus s) { return s == RecurrenceStatus::Found ? "FOUND" : "NONE_UP_TO"; }

namespace {

// Connection polynomial c_0 = 1, c_1, ..., c_len of the shortest linear
// recurrence generating seq.
std::vector<Rational> berlekamp_massey(std::span<const Rational> seq, std::size_t& len) {
  std::vector<Rational> c{1}, b{1};
  len = 0;
  std::size_t shift = 1;
  Rational last_disc = 1;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    Rational d = seq[n];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) d += c[i] * seq[n - i];
    if (d == 0) {
      ++shift;
      continue;
    }
    const Rational coef = d / last_disc;
    std::vector<Rational> t = c;
    if (c.size() < b.size() + shift) c.resize(b.size() + shift, Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] -= coef * b[i];
    if (2 * len <= n) {
      len = n + 1 - len;
      b = std::move(t);
      last_disc = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  c.resize(len + 1, Rational(0));
  return c;
}

bool annihilates(std::span<const Rational> seq, const std::vector<Rational>& phi) {
  const std::size_t r = phi.size();
  for (std::size_t n = 0; n + r < seq.size(); ++n) {
    Rational s = seq[n + r];
    for (std::size_t i = 0; i < r; ++i) s += phi[i] * seq[n + i];
    if (s != 0) return false;
  }
  return true;
}

// Bareiss elimination on an integer matrix, returning its rank.
int bareiss_rank(std::vector<std::vector<Integer>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace

RecurrenceReport minimal_recurrence(std::span<const Rational> seq, int max_order) {
  if (max_order < 1) throw OutOfRange("maximum order must be >= 1");
  const int cap = seq.size() >= 2 ? static_cast<int>((seq.size() - 2) / 2) : 0;
  if (cap < 1) throw InsufficientData("a recurrence verdict needs at least 4 terms", 4);
  RecurrenceReport rep;
  rep.requested_order = max_order;
  rep.max_order = std::min(max_order, cap);
  rep.terms = seq.size();
  std::size_t len = 0;
  std::vector<Rational> c = berlekamp_massey(seq, len);
  if (static_cast<int>(len) > rep.max_order) return rep;
  std::vector<Rational> phi(len);
  for (std::size_t i = 0; i < len; ++i) phi[i] = c[len - i];
  if (!annihilates(seq, phi)) throw Error("Berlekamp-Massey output fails verification");
  rep.status = RecurrenceStatus::Found;
  rep.recurrence = CharPoly(std::move(phi));
  return rep;
}

HankelProfile hankel_ranks(std::span<const Rational> seq, int max_size) {
  if (max_size < 1) throw OutOfRange("Hankel size must be >= 1");
  const std::size_t needed = 2 * static_cast<std::size_t>(max_size) - 1;
  if (seq.size() < needed) throw InsufficientData("Hankel profile needs 2S - 1 terms", needed);
  // Scaling by the common denominator keeps every rank and lets elimination
  // run over Z.
  Integer den = 1;
  for (std::size_t i = 0; i < needed; ++i) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), seq[i].get_den_mpz_t());
  std::vector<Integer> ints;
  for (std::size_t i = 0; i < needed; ++i) {
    Rational scaled = seq[i] * Rational(den);
    ints.push_back(scaled.get_num());
  }
  HankelProfile prof;
  for (int s = 1; s <= max_size; ++s) {
    std::vector<std::vector<Integer>> h(static_cast<std::size_t>(s), std::vector<Integer>(static_cast<std::size_t>(s)));
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ints[static_cast<std::size_t>(i + j)];
    prof.ranks.push_back(bareiss_rank(std::move(h)));
  }
  return prof;
}

std::vector<Rational> cayley_hamilton_check(std::span<const Rational> seq, const CharPoly& chi) {
  const std::size_t l = chi.degree();
  if (seq.size() < l + 1) throw InsufficientData("Cayley-Hamilton check needs deg(chi) + 1 terms", l + 1);
  const auto& phi = chi.lower_coeffs();
  std::vector<Rational> res;
  for (std::size_t n = 0; n + l < seq.size(); ++n) {
    Rational s = seq[n + l];
    for (std::size_t i = 0; i < l; ++i) s += phi[i] * seq[n + i];
    res.push_back(s);
  }
  return res;
}

}  // namespace monodyn::recurrence
