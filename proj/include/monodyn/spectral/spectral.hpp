#pragma once

#include <optional>
#include <string>
#include <vector>

#include "monodyn/exact/linalg.hpp"
#include "monodyn/spectral/roots.hpp"

namespace monodyn::spectral {

inline constexpr unsigned kDefaultPrecision = 128;
inline constexpr unsigned kMaxPrecision = 1024;

struct Eigenvalue {
  ComplexRational center;
  Rational radius;
  bool real = false;
  /// Radius zero and center equal to the eigenvalue.
  bool exact = false;
  /// Distinct roots get distinct ids; copies of a repeated root share one.
  std::size_t root_id = 0;
  std::size_t multiplicity = 1;
  /// root_id of the complex conjugate (its own id when real).
  std::size_t conjugate_id = 0;
  /// Index into SpectralProfile::factors of the squarefree piece holding
  /// this root.
  std::size_t factor = 0;
  Rational modulus_lo;
  Rational modulus_hi;
  double modulus = 0;
};

struct SpectralProfile {
  int m = 0;
  unsigned precision = kDefaultPrecision;
  CharPoly char_poly;
  Integer det;
  /// Pairwise coprime squarefree pieces of the characteristic polynomial.
  std::vector<Polynomial> factors;
  /// Sorted by modulus (descending), ties by real then imaginary part.
  std::vector<Eigenvalue> eigenvalues;
  /// permutation[i] = position of eigenvalues[i] in the unsorted root list.
  std::vector<std::size_t> permutation;
  std::vector<double> moduli;
  /// lambda[k] ~ |mu_1| ... |mu_k|, enclosed by [lambda_lo[k], lambda_hi[k]].
  std::vector<double> lambda;
  std::vector<Rational> lambda_lo;
  std::vector<Rational> lambda_hi;
  /// Eigenvalues with the same class id have certified equal moduli.
  std::vector<std::size_t> modulus_class;

  /// Equality of |mu_i| and |mu_j| (0-based sorted positions) established
  /// by exact reasoning.
  bool certified_equal_modulus(std::size_t i, std::size_t j) const;
};

/// Eigenvalues of A from its exact characteristic polynomial. Retries with
/// doubled precision while roots fail to isolate or adjacent moduli cannot be
/// ordered, up to kMaxPrecision. Throws SingularMatrix for det A = 0 and
/// PrecisionExhausted when isolation never succeeds. An ordering that stays
/// ambiguous is returned as is and surfaces as UNDECIDED in gap_report.
SpectralProfile spectral_profile(const IntegerMatrix& a, unsigned precision = kDefaultPrecision);

std::vector<double> dynamical_degrees(const SpectralProfile& profile);

enum class GapStatus { CertifiedGap, CertifiedEqual, Undecided };
std::string to_string(GapStatus s);

struct Gap {
  int k = 0;
  GapStatus status = GapStatus::Undecided;
  /// |mu_k| - |mu_{k+1}| and an enclosure of it.
  double margin = 0;
  Rational margin_lo;
  Rational margin_hi;
};

struct GapReport {
  std::vector<Gap> gaps;  // k = 1..m-1

  const Gap& at(int k) const { return gaps.at(static_cast<std::size_t>(k - 1)); }
  std::vector<int> certified_gaps() const;
};

/// Throws std::invalid_argument when the profile does not belong to A.
GapReport gap_report(const SpectralProfile& profile, const IntegerMatrix& a);

enum class RootOfUnityStatus { ExactYes, ExactNo, NumericProbablyNo, Undecided };
std::string to_string(RootOfUnityStatus s);

struct RootOfUnityVerdict {
  RootOfUnityStatus status = RootOfUnityStatus::Undecided;
  /// Order of mu_k / mu_{k+1} for ExactYes; candidate order (the best
  /// continued-fraction denominator) for Undecided.
  std::optional<int> order;
  /// Integer quadratic r^2 - p r + q when the exact path applied.
  std::optional<std::pair<Integer, Integer>> quadratic;
  /// Numeric path: arg(mu_k / mu_{k+1}) / (2 pi), its best approximation
  /// with bounded denominator, and the denominator bound.
  double turn = 0;
  Rational approximation;
  Integer denominator_bound;
};

inline constexpr long kRootOfUnityDenominatorBound = 1000000;

/// Decides whether mu_k / mu_{k+1} is a root of unity when the two form a
/// certified conjugate pair. Throws PreconditionViolated otherwise.
RootOfUnityVerdict root_of_unity_test(const IntegerMatrix& a, int k,
                                      unsigned precision = kDefaultPrecision);
RootOfUnityVerdict root_of_unity_test(const SpectralProfile& profile, int k);

}  // namespace monodyn::spectral
