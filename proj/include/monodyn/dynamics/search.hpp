#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monodyn/dynamics/model.hpp"

namespace monodyn::dynamics {

inline constexpr std::uint64_t kDefaultSeed = 12345;

struct BasisSearchOptions {
  int attempts = 64;
  /// Relative size of the random perturbations of the start vector and
  /// column scales between attempts.
  double perturb_scale = 0.5;
  /// Largest denominator allowed when rationalizing basis vectors.
  long denominator_bound = 10000;
  std::uint64_t seed = kDefaultSeed;
  int horizon = kDefaultHorizon;
};

struct PowerSearchOptions {
  int max_l = 64;
  /// Powers l0..l0+T must all be sign-uniform; T = 0 accepts a single power.
  int confirm_window = 8;
  int horizon = kDefaultHorizon;
};

enum class StabilizationMode { Basis, Power };
std::string to_string(StabilizationMode m);

/// Sign of the k-minors of A^l in the model basis, per requested k.
struct PowerTraceEntry {
  int l = 0;
  std::vector<int> signs;
};

struct StabilizationResult {
  StabilizationMode mode = StabilizationMode::Basis;
  bool found = false;
  SkewModel model;
  /// Power mode only.
  std::optional<int> l0;
  std::vector<int> ks;
  /// Exact certificates of the returned object (for A^l0 in power mode).
  std::vector<StabilityCertificate> certificates;
  std::vector<std::string> log;
  std::vector<PowerTraceEntry> trace;
  int attempts_used = 0;
};

/// Looks for a rational basis in which every minor of A of every size k in
/// 1..m-1 has one sign. Requires m real, distinct eigenvalues of one sign
/// (PreconditionViolated otherwise). The target is a strictly totally
/// positive matrix with the spectrum of A, taken as a power of a Jacobi
/// matrix built by Lanczos; its basis is rationalized with growing
/// denominators and certified exactly. found == false after the attempt
/// budget does not mean no such basis exists.
StabilizationResult stabilize_basis_search(const IntegerMatrix& a, const BasisSearchOptions& opts = {});

/// Smallest l0 <= max_l such that for l in [l0, l0 + T] the k-minors of A^l
/// in the model basis are sign-uniform for every k in ks. Each k must be a
/// certified spectral gap (PreconditionViolated otherwise). found == false
/// leaves the full sign trace in the result.
StabilizationResult find_power_l0(const IntegerMatrix& a, const SkewModel& model, std::span<const int> ks,
                                  const PowerSearchOptions& opts = {});

/// Rational basis in which, for every certified gap k, the dominant
/// eigenvector of Lambda^k A and its left counterpart are strictly
/// one-signed, so the k-minors of A^l become sign-uniform for large l.
/// Validated numerically only. Throws PreconditionViolated without certified
/// gaps and SearchExhausted when no candidate validates.
SkewModel orthant_basis(const IntegerMatrix& a, const BasisSearchOptions& opts = {});

}  // namespace monodyn::dynamics
