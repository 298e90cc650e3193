#pragma once

#include <span>
#include <string>
#include <vector>

#include "monodyn/exact/linalg.hpp"

namespace monodyn::recurrence {

enum class RecurrenceStatus { Found, NoneUpTo };
std::string to_string(RecurrenceStatus s);

struct RecurrenceReport {
  RecurrenceStatus status = RecurrenceStatus::NoneUpTo;
  /// Found: a_{n+r} + phi_{r-1} a_{n+r-1} + ... + phi_0 a_n = 0 for every
  /// window of the sequence, with r = recurrence.degree() minimal.
  CharPoly recurrence;
  /// Order actually decided: min(L, floor((N - 2) / 2)).
  int max_order = 0;
  int requested_order = 0;
  /// Number of terms the verdict rests on.
  std::size_t terms = 0;

  int order() const { return static_cast<int>(recurrence.degree()); }
};

/// Berlekamp-Massey over Q. An order-r verdict needs N >= 2r + 2 terms, so L
/// is capped at floor((N - 2) / 2); InsufficientData when that cap is 0.
RecurrenceReport minimal_recurrence(std::span<const Rational> seq, int max_order);

struct HankelProfile {
  /// ranks[s-1] = rank of (a_{i+j})_{0 <= i,j < s}.
  std::vector<int> ranks;
};

/// Needs N >= 2S - 1.
HankelProfile hankel_ranks(std::span<const Rational> seq, int max_size);

/// b_{n+L} + phi_{L-1} b_{n+L-1} + ... + phi_0 b_n for n = 0..N-L-1. Needs
/// N >= L + 1.
std::vector<Rational> cayley_hamilton_check(std::span<const Rational> seq, const CharPoly& chi);

}  // namespace monodyn::recurrence
