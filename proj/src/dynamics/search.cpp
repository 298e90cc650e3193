#include "monodyn/dynamics/search.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "monodyn/error.hpp"
#include "monodyn/spectral/spectral.hpp"

namespace monodyn::dynamics {

std::string to_string(StabilizationMode m) { return m == StabilizationMode::Basis ? "BASIS" : "POWER"; }

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd to_eigen(const IntegerMatrix& a) {
  MatrixXd r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(a(i, j));
  return r;
}

MatrixXd to_eigen(const std::vector<RationalVector>& cols) {
  const auto m = static_cast<Eigen::Index>(cols.size());
  MatrixXd r(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < m; ++i) r(i, j) = to_double(cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
  return r;
}

// Orthonormal Q with Q^T diag(nu) Q tridiagonal, first column along q, by
// Lanczos with full reorthogonalization. The off-diagonal entries come out
// positive; nullopt on breakdown.
std::optional<MatrixXd> lanczos(const VectorXd& nu, const VectorXd& q) {
  const Eigen::Index m = nu.size();
  MatrixXd Q = MatrixXd::Zero(m, m);
  Q.col(0) = q / q.norm();
  double beta_prev = 0;
  for (Eigen::Index j = 0; j + 1 < m; ++j) {
    VectorXd w = nu.cwiseProduct(Q.col(j));
    w -= Q.col(j).dot(w) * Q.col(j);
    if (j > 0) w -= beta_prev * Q.col(j - 1);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i <= j; ++i) w -= Q.col(i).dot(w) * Q.col(i);
    const double beta = w.norm();
    if (beta < 1e-10 * nu.cwiseAbs().maxCoeff()) return std::nullopt;
    Q.col(j + 1) = w / beta;
    beta_prev = beta;
  }
  return Q;
}

// Columns scaled to max-norm 1 and rounded to rationals with bounded
// denominators. Column signs are kept: flipping one would flip minor signs.
std::vector<RationalVector> rationalize_columns(const MatrixXd& v, long bound) {
  std::vector<RationalVector> cols;
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const double s = v.col(j).cwiseAbs().maxCoeff();
    RationalVector c;
    for (Eigen::Index i = 0; i < v.rows(); ++i) c.push_back(rationalize(v(i, j) / s, Integer(bound)));
    cols.push_back(std::move(c));
  }
  return cols;
}

std::vector<long> denominator_ladder(long bound) {
  std::vector<long> out;
  for (long d = 10; d < bound; d *= 10) out.push_back(d);
  out.push_back(bound);
  return out;
}

bool all_minors_uniform(const RationalMatrix& b) {
  for (int k = 1; k < static_cast<int>(b.rows()); ++k)
    if (uniform_sign(exterior_power(b, k).entries()) == 0) return false;
  return true;
}

double rand_positive(Rng& rng, double scale) {
  return std::exp(scale * (2 * rng.unit() - 1));
}

// Numeric eigen-data sorted by modulus, then real part, then imaginary part.
struct EigenPairs {
  std::vector<std::complex<double>> values;
  std::vector<Eigen::VectorXcd> vectors;
};

EigenPairs sorted_eigen(const MatrixXd& a) {
  Eigen::EigenSolver<MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw SearchExhausted("numeric eigen-decomposition failed");
  const Eigen::Index m = a.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  auto vals = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    const auto u = vals(x), v = vals(y);
    if (std::abs(u) != std::abs(v)) return std::abs(u) > std::abs(v);
    if (u.real() != v.real()) return u.real() > v.real();
    return u.imag() > v.imag();
  });
  EigenPairs out;
  for (Eigen::Index i : order) {
    out.values.push_back(vals(i));
    out.vectors.push_back(es.eigenvectors().col(i));
  }
  return out;
}

// Real basis whose leading columns span the dominant invariant subspaces:
// eigenvectors for real eigenvalues, (Re v, Im v) for conjugate pairs.
MatrixXd real_jordan_basis(const EigenPairs& e) {
  const auto m = static_cast<Eigen::Index>(e.values.size());
  MatrixXd r(m, m);
  Eigen::Index col = 0;
  for (std::size_t i = 0; i < e.values.size() && col < m; ++i) {
    const auto& mu = e.values[i];
    const auto& v = e.vectors[i];
    if (std::abs(mu.imag()) <= 1e-12 * std::max(1.0, std::abs(mu))) {
      // Rotate so the largest component is real.
      Eigen::Index big = 0;
      v.cwiseAbs().maxCoeff(&big);
      std::complex<double> phase = std::abs(v(big)) / v(big);
      r.col(col++) = (v * phase).real();
    } else if (mu.imag() > 0) {
      r.col(col++) = v.real();
      if (col < m) r.col(col++) = v.imag();
    }
  }
  if (col != m) throw SearchExhausted("could not assemble a real eigenbasis");
  return r;
}

// Minors of w with rows I and columns [k] (column_mode) or rows [k] and
// columns I, for all I.
std::vector<double> leading_minors(const MatrixXd& w, int k, bool column_mode) {
  const int m = static_cast<int>(w.rows());
  std::vector<double> out;
  for (const MultiIndex& idx : MultiIndex::all(k, m)) {
    MatrixXd sub(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const Eigen::Index other = idx[static_cast<std::size_t>(a)] - 1;
        sub(a, b) = column_mode ? w(other, b) : w(b, other);
      }
    // In row mode sub is the transpose, which has the same determinant.
    out.push_back(sub.determinant());
  }
  return out;
}

bool strictly_one_signed(const std::vector<double>& xs) {
  double big = 0;
  for (double x : xs) big = std::max(big, std::fabs(x));
  if (big == 0) return false;
  const bool pos = xs[0] > 0;
  for (double x : xs) {
    if (std::fabs(x) < 1e-9 * big) return false;
    if ((x > 0) != pos) return false;
  }
  return true;
}

std::string describe_attempt(int attempt, int p, long den, const std::string& what) {
  std::ostringstream s;
  s << "attempt " << attempt << " (power " << p << ", denominator " << den << "): " << what;
  return s.str();
}

}  // namespace

StabilizationResult stabilize_basis_search(const IntegerMatrix& a, const BasisSearchOptions& opts) {
  require_valid_map(a);
  const int m = static_cast<int>(a.rows());
  auto profile = spectral::spectral_profile(a);
  int spectrum_sign = 0;
  for (std::size_t i = 0; i < profile.eigenvalues.size(); ++i) {
    const auto& e = profile.eigenvalues[i];
    if (!e.real) throw PreconditionViolated("spectrum is not real");
    if (e.multiplicity != 1 || (i > 0 && profile.eigenvalues[i - 1].root_id == e.root_id))
      throw PreconditionViolated("eigenvalues are not distinct");
    int s = 0;
    if (e.center.re - e.radius > 0) s = 1;
    if (e.center.re + e.radius < 0) s = -1;
    if (s == 0) throw PreconditionViolated("sign of an eigenvalue is not certified");
    if (spectrum_sign != 0 && s != spectrum_sign) throw PreconditionViolated("eigenvalues of both signs");
    spectrum_sign = s;
  }

  StabilizationResult res;
  res.mode = StabilizationMode::Basis;
  for (int k = 1; k < m; ++k) res.ks.push_back(k);
  auto finish = [&](SkewModel model) {
    res.certificates.clear();
    for (int k = 1; k < m; ++k) {
      auto c = check_k_stable(a, model, k, opts.horizon);
      if (c.verdict != Verdict::StableBySign) return false;
      res.certificates.push_back(std::move(c));
    }
    res.model = std::move(model);
    res.found = true;
    return true;
  };

  if (all_minors_uniform(to_rational(a)) && finish(SkewModel::standard(m))) {
    res.log.push_back("standard basis already sign-uniform");
    return res;
  }

  MatrixXd ap = to_eigen(a) * static_cast<double>(spectrum_sign);
  EigenPairs eig = sorted_eigen(ap);
  VectorXd mu(m);
  MatrixXd p(m, m);
  for (int i = 0; i < m; ++i) {
    mu(i) = eig.values[static_cast<std::size_t>(i)].real();
    p.col(i) = eig.vectors[static_cast<std::size_t>(i)].real();
  }

  Rng rng(opts.seed);
  for (int attempt = 1; attempt <= opts.attempts; ++attempt) {
    res.attempts_used = attempt;
    const int power = m - 1 + (attempt - 1) % 3;
    VectorXd q = VectorXd::Ones(m), s = VectorXd::Ones(m);
    if (attempt > 1) {
      for (int i = 0; i < m; ++i) {
        q(i) = rand_positive(rng, opts.perturb_scale);
        s(i) = rand_positive(rng, opts.perturb_scale);
      }
    }
    VectorXd nu = mu.array().pow(1.0 / power);
    auto qm = lanczos(nu, q);
    if (!qm) {
      res.log.push_back(describe_attempt(attempt, power, 0, "Lanczos breakdown"));
      continue;
    }
    MatrixXd v = p * s.asDiagonal() * (*qm);
    bool done = false;
    for (long den : denominator_ladder(opts.denominator_bound)) {
      auto cols = rationalize_columns(v, den);
      RationalMatrix vm = RationalMatrix::from_columns(cols);
      if (det(vm) == 0) continue;
      RationalMatrix b = change_of_basis(to_rational(a), cols);
      if (!all_minors_uniform(b)) continue;
      if (finish(build_skew_model(cols))) {
        res.log.push_back(describe_attempt(attempt, power, den, "certified"));
        done = true;
        break;
      }
    }
    if (done) return res;
    res.log.push_back(describe_attempt(attempt, power, opts.denominator_bound, "no sign-uniform rationalization"));
  }
  return res;
}

StabilizationResult find_power_l0(const IntegerMatrix& a, const SkewModel& model, std::span<const int> ks,
                                  const PowerSearchOptions& opts) {
  require_valid_map(a);
  const int m = static_cast<int>(a.rows());
  if (ks.empty()) throw PreconditionViolated("no k requested");
  for (int k : ks)
    if (k < 1 || k >= m) throw OutOfRange("k = " + std::to_string(k) + " outside [1, " + std::to_string(m - 1) + "]");
  if (opts.max_l < 1 || opts.confirm_window < 0) throw OutOfRange("max_l must be >= 1 and T >= 0");
  auto profile = spectral::spectral_profile(a);
  auto gaps = spectral::gap_report(profile, a);
  for (int k : ks) {
    if (gaps.at(k).status != spectral::GapStatus::CertifiedGap)
      throw PreconditionViolated("no certified gap |mu_" + std::to_string(k) + "| > |mu_" + std::to_string(k + 1) +
                                 "| (" + spectral::to_string(gaps.at(k).status) + ")");
  }

  StabilizationResult res;
  res.mode = StabilizationMode::Power;
  res.model = model;
  res.ks.assign(ks.begin(), ks.end());
  const RationalMatrix b = in_model_basis(a, model);
  std::vector<RationalMatrix> step, current;
  for (int k : ks) {
    step.push_back(exterior_power(b, k).entries());
    current.push_back(step.back());
  }
  const int T = opts.confirm_window;
  int run_start = 0;
  for (int l = 1; l <= opts.max_l + T; ++l) {
    PowerTraceEntry entry;
    entry.l = l;
    bool uniform = true;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const int sg = uniform_sign(current[i]);
      entry.signs.push_back(sg);
      if (sg == 0) uniform = false;
      current[i] = current[i] * step[i];
    }
    res.trace.push_back(std::move(entry));
    if (!uniform) {
      run_start = 0;
      continue;
    }
    if (run_start == 0) {
      if (l > opts.max_l) break;
      run_start = l;
    }
    if (l - run_start == T) {
      res.l0 = run_start;
      break;
    }
  }
  if (!res.l0) {
    res.log.push_back("no sign-uniform window of length " + std::to_string(T + 1) + " starting at l <= " +
                      std::to_string(opts.max_l));
    return res;
  }
  const IntegerMatrix al = mat_pow(a, static_cast<unsigned>(*res.l0));
  for (int k : ks) {
    auto c = check_k_stable(al, model, k, opts.horizon);
    if (c.verdict != Verdict::StableBySign) throw Error("re-certification of A^l0 failed");
    res.certificates.push_back(std::move(c));
  }
  res.found = true;
  res.log.push_back("l0 = " + std::to_string(*res.l0) + " confirmed through l = " + std::to_string(*res.l0 + T));
  return res;
}

SkewModel orthant_basis(const IntegerMatrix& a, const BasisSearchOptions& opts) {
  require_valid_map(a);
  const int m = static_cast<int>(a.rows());
  auto profile = spectral::spectral_profile(a);
  auto ks = spectral::gap_report(profile, a).certified_gaps();
  if (ks.empty()) throw PreconditionViolated("no certified spectral gap");

  EigenPairs eig = sorted_eigen(to_eigen(a));
  MatrixXd r = real_jordan_basis(eig);
  Eigen::FullPivLU<MatrixXd> lu(r);
  if (lu.rank() < m) throw SearchExhausted("numeric eigenbasis is singular");
  const MatrixXd r_inv = lu.inverse();

  auto valid = [&](const std::vector<RationalVector>& cols) {
    MatrixXd v = to_eigen(cols);
    Eigen::FullPivLU<MatrixXd> vlu(v);
    if (vlu.rank() < m) return false;
    MatrixXd w = vlu.inverse() * r;
    MatrixXd z = r_inv * v;
    for (int k : ks) {
      if (!strictly_one_signed(leading_minors(w, k, true))) return false;
      if (!strictly_one_signed(leading_minors(z, k, false))) return false;
    }
    return true;
  };

  // The standard basis is kept whenever powers of A already settle in it.
  SkewModel standard = SkewModel::standard(m);
  PowerSearchOptions quick;
  quick.max_l = 8;
  if (find_power_l0(a, standard, ks, quick).found) return standard;

  Rng rng(opts.seed);
  for (int attempt = 1; attempt <= opts.attempts; ++attempt) {
    const int power = m - 1 + (attempt - 1) % 3;
    VectorXd q = VectorXd::Ones(m), s = VectorXd::Ones(m);
    if (attempt > 1) {
      for (int i = 0; i < m; ++i) {
        q(i) = rand_positive(rng, opts.perturb_scale);
        s(i) = rand_positive(rng, opts.perturb_scale);
      }
    }
    // Any decreasing positive spectrum works; the dominant subspaces are
    // those of A because the columns of r are kept in order.
    VectorXd nu(m);
    for (int i = 0; i < m; ++i) nu(i) = std::pow(static_cast<double>(m - i + 1), 1.0 / power);
    auto qm = lanczos(nu, q);
    if (!qm) continue;
    MatrixXd v = r * s.asDiagonal() * (*qm);
    for (long den : denominator_ladder(opts.denominator_bound)) {
      auto cols = rationalize_columns(v, den);
      if (valid(cols)) return build_skew_model(cols);
    }
  }
  throw SearchExhausted("no orthant basis after " + std::to_string(opts.attempts) + " attempts");
}

}  // namespace monodyn::dynamics
