#include "monodyn/dynamics/degree.hpp"

#include <cmath>

#include "monodyn/error.hpp"
#include "monodyn/geometry/mixed_volume.hpp"

namespace monodyn::dynamics {

Rational degree(const IntegerMatrix& a, int k, const geometry::Polytope& p) {
  require_valid_map(a);
  const int m = static_cast<int>(a.rows());
  if (k < 0 || k > m) throw OutOfRange("k = " + std::to_string(k) + " outside [0, " + std::to_string(m) + "]");
  if (p.ambient_dim() != m) throw SizeMismatch("polytope dimension differs from the matrix");
  if (p.dim() < m) throw DegeneratePolytope("divisor polytope is not full-dimensional");
  if (det(a) == 0) throw SingularMatrix("degree needs det A != 0");
  const Rational mf(factorial(static_cast<unsigned>(m)));
  if (k == 0) return mf * geometry::volume(p);
  const geometry::Polytope ap = geometry::linear_image(to_rational(a), p);
  if (k == m) return mf * geometry::volume(ap);
  const std::vector<geometry::MixedBody> bodies{{ap, k}, {p, m - k}};
  return mf * geometry::mixed_volume(bodies);
}

DegreeSequence degree_sequence(const IntegerMatrix& a, int k, const geometry::Polytope& p, int n_max) {
  if (n_max < 1) throw OutOfRange("sequence length must be >= 1");
  DegreeSequence seq;
  seq.k = k;
  seq.polytope = p;
  IntegerMatrix power = a;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) power = power * a;
    seq.values.push_back(degree(power, k, p));
  }
  return seq;
}

LambdaEstimate lambda_estimate(const DegreeSequence& seq, const spectral::SpectralProfile& profile) {
  if (seq.values.size() < 5) throw InsufficientData("lambda estimate needs at least 5 degrees", 5);
  if (seq.k < 0 || seq.k > profile.m) throw OutOfRange("k outside the profile");
  LambdaEstimate est;
  est.n = static_cast<int>(seq.values.size());
  const Rational& last = seq.values.back();
  if (last <= 0) throw Error("degree sequence has a non-positive term");
  // Perfect powers (c I and friends) come out exact.
  Integer root;
  if (last.get_den() == 1 && mpz_root(root.get_mpz_t(), last.get_num().get_mpz_t(), static_cast<unsigned long>(est.n)) != 0) {
    est.estimate = to_double(root);
  } else {
    const double log_deg = log_abs(last.get_num()) - log_abs(last.get_den());
    est.estimate = std::exp(log_deg / est.n);
  }
  est.lambda = profile.lambda[static_cast<std::size_t>(seq.k)];
  est.relative_deviation = std::fabs(est.estimate - est.lambda) / est.lambda;
  return est;
}

geometry::Polytope product_divisor_polytope(const SkewModel& model) {
  return geometry::zonotope(model.u);
}

}  // namespace monodyn::dynamics
