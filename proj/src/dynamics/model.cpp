#include "monodyn/dynamics/model.hpp"

#include "monodyn/error.hpp"

namespace monodyn::dynamics {

RationalMatrix SkewModel::u_matrix() const { return RationalMatrix::from_columns(u); }
RationalMatrix SkewModel::epsilon_matrix() const { return RationalMatrix::from_columns(epsilon); }

SkewModel SkewModel::standard(int m) {
  std::vector<RationalVector> e;
  for (int j = 0; j < m; ++j) {
    RationalVector v(static_cast<std::size_t>(m));
    v[static_cast<std::size_t>(j)] = 1;
    e.push_back(std::move(v));
  }
  return build_skew_model(e);
}

SkewModel build_skew_model(std::span<const RationalVector> epsilon) {
  const std::size_t m = epsilon.size();
  if (m == 0) throw SizeMismatch("empty basis");
  for (const auto& e : epsilon)
    if (e.size() != m) throw SizeMismatch("basis must consist of m vectors of length m");
  RationalMatrix e = RationalMatrix::from_columns(epsilon);
  if (det(e) == 0) throw SingularBasis("basis vectors are linearly dependent");
  // Row j of E^-1 pairs to zero with every eps_l, l != j.
  RationalMatrix inv = inverse(e);
  SkewModel model;
  model.m = static_cast<int>(m);
  model.epsilon.assign(epsilon.begin(), epsilon.end());
  for (std::size_t j = 0; j < m; ++j) {
    RationalVector row = inv.row(j);
    IntegerVector v = primitive_vector(row);
    Rational a = 0;
    for (std::size_t i = 0; i < m; ++i) a += Rational(v[i]) * epsilon[j][i];
    if (a < 0) {
      for (auto& x : v) x = -x;
      a = -a;
    }
    RationalVector u = epsilon[j];
    for (auto& x : u) x /= a;
    model.v.push_back(std::move(v));
    model.alpha.push_back(a);
    model.u.push_back(std::move(u));
  }
  return model;
}

RationalMatrix in_model_basis(const IntegerMatrix& a, const SkewModel& model) {
  if (static_cast<int>(a.rows()) != model.m) throw SizeMismatch("model dimension differs from the matrix");
  return change_of_basis(to_rational(a), model.u);
}

namespace {

void require_k(int k, int m) {
  if (k < 1 || k > m - 1) {
    throw OutOfRange("k = " + std::to_string(k) + " outside [1, " + std::to_string(m - 1) + "]");
  }
}

RationalMatrix entrywise_abs(const RationalMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = abs(m(i, j));
  return r;
}

}  // namespace

PullbackMatrix pullback_matrix(const IntegerMatrix& a, const SkewModel& model, int k) {
  require_valid_map(a);
  require_k(k, static_cast<int>(a.rows()));
  if (det(a) == 0) throw SingularMatrix("pullback needs det A != 0");
  RationalMatrix b = in_model_basis(a, model);
  PullbackMatrix p;
  p.k = k;
  p.signed_minors = exterior_power(b, k);
  p.matrix = entrywise_abs(p.signed_minors.entries());
  p.labels = p.signed_minors.labels();
  return p;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::StableBySign: return "STABLE_BY_SIGN";
    case Verdict::NotSignUniform: return "NOT_SIGN_UNIFORM";
    case Verdict::FunctorialityFails: return "FUNCTORIALITY_FAILS";
  }
  return "NOT_SIGN_UNIFORM";
}

int uniform_sign(const RationalMatrix& m) {
  bool pos = false, neg = false;
  for (const auto& x : m.data()) {
    if (x > 0) pos = true;
    if (x < 0) neg = true;
  }
  if (pos && neg) return 0;
  return neg ? -1 : 1;
}

StabilityCertificate certify_in_basis(const RationalMatrix& b, int k, int horizon) {
  require_k(k, static_cast<int>(b.rows()));
  StabilityCertificate c;
  c.k = k;
  c.horizon = horizon;
  c.minors = exterior_power(b, k);
  const RationalMatrix& e = c.minors.entries();
  c.sign_pattern.assign(e.rows(), std::vector<int>(e.cols()));
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j < e.cols(); ++j) c.sign_pattern[i][j] = sign(e(i, j));
  c.sign = uniform_sign(e);
  if (c.sign != 0) {
    c.verdict = Verdict::StableBySign;
    return c;
  }
  c.verdict = Verdict::NotSignUniform;
  // (f^n)^* is |Lambda^k B^n| = |(Lambda^k B)^n| by Cauchy-Binet.
  const RationalMatrix pull = entrywise_abs(e);
  RationalMatrix pull_power = pull;
  RationalMatrix exact_power = e;
  for (int n = 2; n <= horizon; ++n) {
    pull_power = pull_power * pull;
    exact_power = exact_power * e;
    if (!(entrywise_abs(exact_power) == pull_power)) {
      c.verdict = Verdict::FunctorialityFails;
      c.failing_power = n;
      break;
    }
  }
  return c;
}

StabilityCertificate check_k_stable(const IntegerMatrix& a, const SkewModel& model, int k, int horizon) {
  require_valid_map(a);
  require_k(k, static_cast<int>(a.rows()));
  return certify_in_basis(in_model_basis(a, model), k, horizon);
}

}  // namespace monodyn::dynamics
