#pragma once

#include <vector>

#include "monodyn/dynamics/model.hpp"
#include "monodyn/geometry/polytope.hpp"
#include "monodyn/spectral/spectral.hpp"

namespace monodyn::dynamics {

/// deg_{D,k}(f_A) = m! MV(A P[k], P[m-k]) for the divisor with polytope P.
/// k = 0 gives m! Vol(P), which is 1 for the standard simplex. Throws
/// OutOfRange for k outside [0, m], DegeneratePolytope unless P is
/// full-dimensional, SingularMatrix for det A = 0.
Rational degree(const IntegerMatrix& a, int k, const geometry::Polytope& p);

struct DegreeSequence {
  int k = 0;
  geometry::Polytope polytope;
  /// values[n-1] = deg_{D,k}(f_A^n).
  std::vector<Rational> values;
};

/// n = 1..N.
DegreeSequence degree_sequence(const IntegerMatrix& a, int k, const geometry::Polytope& p, int n_max);

struct LambdaEstimate {
  int n = 0;
  /// deg_k(f^N)^(1/N).
  double estimate = 0;
  double lambda = 0;
  /// |estimate - lambda| / lambda.
  double relative_deviation = 0;
};

/// Needs N >= 5 (InsufficientData otherwise).
LambdaEstimate lambda_estimate(const DegreeSequence& seq, const spectral::SpectralProfile& profile);

/// Ample divisor sum D_j on the skew model: the zonotope of the u_j. The
/// standard model gives the unit cube, i.e. O(1,...,1) on (P^1)^m.
geometry::Polytope product_divisor_polytope(const SkewModel& model);

}  // namespace monodyn::dynamics
