#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monodyn/exact/linalg.hpp"

namespace monodyn::dynamics {

/// Toric model built from a rational basis eps_1..eps_m of M_Q. v_j is the
/// primitive generator of the line killed by every eps_l with l != j, signed
/// so alpha_j = <v_j, eps_j> > 0, and u_j = eps_j / alpha_j is the dual basis
/// (<v_i, u_j> = delta_ij). The standard basis gives (P^1)^m.
struct SkewModel {
  int m = 0;
  std::vector<RationalVector> epsilon;
  std::vector<IntegerVector> v;
  std::vector<RationalVector> u;
  std::vector<Rational> alpha;

  /// Columns u_1..u_m.
  RationalMatrix u_matrix() const;
  RationalMatrix epsilon_matrix() const;

  static SkewModel standard(int m);
};

/// Throws SingularBasis for dependent vectors, SizeMismatch for a ragged or
/// non-square family.
SkewModel build_skew_model(std::span<const RationalVector> epsilon);

/// U^-1 A U, the matrix of A in the u-basis.
RationalMatrix in_model_basis(const IntegerMatrix& a, const SkewModel& model);

/// Pullback on degree-2k classes [D_I]: entry (I, J) = |A_IJ(u)|.
struct PullbackMatrix {
  int k = 0;
  /// The signed minors A_IJ(u).
  ExteriorMatrix signed_minors;
  RationalMatrix matrix;
  std::vector<MultiIndex> labels;
};

/// Throws OutOfRange unless 1 <= k <= m-1, SingularMatrix for det A = 0,
/// SizeMismatch when the model dimension differs from A.
PullbackMatrix pullback_matrix(const IntegerMatrix& a, const SkewModel& model, int k);

enum class Verdict { StableBySign, NotSignUniform, FunctorialityFails };
std::string to_string(Verdict v);

inline constexpr int kDefaultHorizon = 10;

struct StabilityCertificate {
  int k = 0;
  Verdict verdict = Verdict::NotSignUniform;
  /// +1 or -1 for StableBySign, 0 otherwise.
  int sign = 0;
  /// First n with |Lambda^k B|^n != |Lambda^k B^n|.
  std::optional<int> failing_power;
  int horizon = 0;
  ExteriorMatrix minors;
  /// Sign (-1, 0, 1) of each minor.
  std::vector<std::vector<int>> sign_pattern;
};

/// +1 if every entry is >= 0, -1 if every entry is <= 0, 0 for mixed signs
/// (the zero matrix counts as +1).
int uniform_sign(const RationalMatrix& m);

/// Sign test on the minors of A in the u-basis, then a functoriality
/// falsifier for n = 2..horizon when the test is inconclusive.
StabilityCertificate check_k_stable(const IntegerMatrix& a, const SkewModel& model, int k,
                                    int horizon = kDefaultHorizon);

/// Same, for a matrix already written in the model basis.
StabilityCertificate certify_in_basis(const RationalMatrix& b, int k, int horizon = kDefaultHorizon);

}  // namespace monodyn::dynamics
