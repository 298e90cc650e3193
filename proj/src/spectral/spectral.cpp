#include "monodyn/spectral/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "monodyn/error.hpp"

namespace monodyn::spectral {

namespace {

struct Piece {
  Polynomial poly;
  std::size_t multiplicity;
  // Roots come in pairs +-alpha.
  bool symmetric;
};

std::vector<Piece> split_pieces(const Polynomial& chi) {
  std::vector<Piece> pieces;
  auto sqf = squarefree_decomposition(chi);
  for (std::size_t i = 0; i < sqf.size(); ++i) {
    const Polynomial& f = sqf[i];
    if (f.degree() < 1) continue;
    Polynomial g = gcd(f, f.reflect());
    Polynomial h = f.divmod(g).first;
    if (g.degree() >= 1) pieces.push_back({g, i + 1, true});
    if (h.degree() >= 1) pieces.push_back({h.monic(), i + 1, false});
  }
  return pieces;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct Attempt {
  std::vector<Eigenvalue> roots;  // one entry per distinct root
  std::vector<std::size_t> cls;   // modulus class per distinct root
};

// Isolates all distinct roots, certifies the exact relations between them
// and mirrors related centers so that equal moduli have equal center norms.
std::optional<Attempt> isolate_all(const std::vector<Piece>& pieces, unsigned bits) {
  Attempt out;
  std::vector<std::pair<std::size_t, std::size_t>> negations;
  for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
    auto enc = isolate_roots(pieces[pi].poly, bits);
    if (!enc) return std::nullopt;
    const std::size_t base = out.roots.size();
    for (const RootEnclosure& e : *enc) {
      Eigenvalue ev;
      ev.center = e.center;
      ev.radius = e.radius;
      ev.real = e.real;
      ev.root_id = out.roots.size();
      ev.conjugate_id = base + e.conjugate;
      ev.multiplicity = pieces[pi].multiplicity;
      ev.factor = pi;
      if (ev.real) {
        Integer n = round_of(ev.center.re);
        if (pieces[pi].poly(Rational(n)) == 0) {
          ev.center.re = n;
          ev.radius = 0;
          ev.exact = true;
        }
      }
      out.roots.push_back(ev);
    }
    if (!pieces[pi].symmetric) continue;
    for (std::size_t i = 0; i < enc->size(); ++i) {
      const Eigenvalue& a = out.roots[base + i];
      ComplexRational neg{-a.center.re, -a.center.im};
      std::vector<std::size_t> hits;
      for (std::size_t j = 0; j < enc->size(); ++j) {
        const Eigenvalue& b = out.roots[base + j];
        Rational reach = a.radius + b.radius;
        if ((neg - b.center).norm() <= reach * reach) hits.push_back(base + j);
      }
      if (hits.size() != 1 || hits[0] == base + i) return std::nullopt;
      negations.emplace_back(base + i, hits[0]);
    }
  }

  // -alpha copies the center of alpha when re(alpha) > 0.
  for (auto [i, j] : negations) {
    Eigenvalue& a = out.roots[i];
    if (sign(a.center.re) <= 0 || j == a.conjugate_id) continue;
    Eigenvalue& b = out.roots[j];
    b.center = {-a.center.re, -a.center.im};
    b.radius = a.radius;
    b.exact = a.exact;
    if (!b.real) {
      Eigenvalue& bc = out.roots[b.conjugate_id];
      bc.center = b.center.conj();
      bc.radius = b.radius;
    }
  }

  UnionFind uf(out.roots.size());
  for (const Eigenvalue& e : out.roots) uf.unite(e.root_id, e.conjugate_id);
  for (auto [i, j] : negations) uf.unite(i, j);
  for (std::size_t i = 0; i < out.roots.size(); ++i)
    for (std::size_t j = i + 1; j < out.roots.size(); ++j)
      if (out.roots[i].exact && out.roots[j].exact && abs(out.roots[i].center.re) == abs(out.roots[j].center.re))
        uf.unite(i, j);
  out.cls.resize(out.roots.size());
  for (std::size_t i = 0; i < out.roots.size(); ++i) out.cls[i] = uf.find(i);

  const unsigned sqrt_bits = bits + 16;
  for (Eigenvalue& e : out.roots) {
    if (e.exact) {
      e.modulus_lo = e.modulus_hi = abs(e.center.re);
    } else {
      Rational n = e.center.norm();
      e.modulus_lo = sqrt_lower(n, sqrt_bits) - e.radius;
      if (e.modulus_lo < 0) e.modulus_lo = 0;
      e.modulus_hi = sqrt_upper(n, sqrt_bits) + e.radius;
    }
    e.modulus = std::sqrt(to_double(e.center.norm()));
  }
  return out;
}

bool sort_before(const Eigenvalue& x, const Eigenvalue& y) {
  Rational nx = x.center.norm(), ny = y.center.norm();
  if (nx != ny) return nx > ny;
  if (x.center.re != y.center.re) return x.center.re > y.center.re;
  return x.center.im > y.center.im;
}

}  // namespace

bool SpectralProfile::certified_equal_modulus(std::size_t i, std::size_t j) const {
  const Eigenvalue& a = eigenvalues.at(i);
  const Eigenvalue& b = eigenvalues.at(j);
  if (a.root_id == b.root_id || a.conjugate_id == b.root_id) return true;
  return modulus_class.at(i) == modulus_class.at(j);
}

SpectralProfile spectral_profile(const IntegerMatrix& a, unsigned precision) {
  require_valid_map(a);
  SpectralProfile prof;
  prof.m = static_cast<int>(a.rows());
  prof.det = det(a);
  if (prof.det == 0) throw SingularMatrix("spectral profile needs det A != 0");
  prof.char_poly = char_poly(a);
  const Polynomial chi = prof.char_poly.polynomial();
  auto pieces = split_pieces(chi);
  for (const Piece& p : pieces) prof.factors.push_back(p.poly);

  unsigned bits = std::max(precision, 16u);
  std::optional<Attempt> best;
  unsigned best_bits = 0;
  for (;; bits *= 2) {
    auto attempt = isolate_all(pieces, bits);
    if (attempt) {
      best = std::move(attempt);
      best_bits = bits;
      // Stop refining once neighbouring moduli are ordered or certified equal.
      std::vector<std::size_t> order(best->roots.size());
      std::iota(order.begin(), order.end(), 0);
      const auto& r = best->roots;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t x, std::size_t y) { return sort_before(r[x], r[y]); });
      bool ambiguous = false;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const Eigenvalue& u = r[order[i]];
        const Eigenvalue& v = r[order[i + 1]];
        if (best->cls[order[i]] == best->cls[order[i + 1]]) continue;
        if (u.modulus_lo <= v.modulus_hi && v.modulus_lo <= u.modulus_hi) ambiguous = true;
      }
      if (!ambiguous) break;
    }
    if (bits >= kMaxPrecision) break;
  }
  if (!best) {
    throw PrecisionExhausted("eigenvalues not isolated at " + std::to_string(kMaxPrecision) + " bits");
  }
  prof.precision = best_bits;

  std::vector<Eigenvalue> raw;
  std::vector<std::size_t> raw_class;
  for (std::size_t i = 0; i < best->roots.size(); ++i)
    for (std::size_t c = 0; c < best->roots[i].multiplicity; ++c) {
      raw.push_back(best->roots[i]);
      raw_class.push_back(best->cls[i]);
    }
  if (raw.size() != static_cast<std::size_t>(prof.m)) throw Error("root count does not match dimension");

  prof.permutation.resize(raw.size());
  std::iota(prof.permutation.begin(), prof.permutation.end(), 0);
  std::stable_sort(prof.permutation.begin(), prof.permutation.end(),
                   [&](std::size_t x, std::size_t y) { return sort_before(raw[x], raw[y]); });
  for (std::size_t idx : prof.permutation) {
    prof.eigenvalues.push_back(raw[idx]);
    prof.modulus_class.push_back(raw_class[idx]);
    prof.moduli.push_back(raw[idx].modulus);
  }

  prof.lambda = {1.0};
  prof.lambda_lo = {Rational(1)};
  prof.lambda_hi = {Rational(1)};
  for (int k = 1; k <= prof.m; ++k) {
    const Eigenvalue& e = prof.eigenvalues[static_cast<std::size_t>(k - 1)];
    prof.lambda.push_back(prof.lambda.back() * e.modulus);
    prof.lambda_lo.push_back(prof.lambda_lo.back() * e.modulus_lo);
    prof.lambda_hi.push_back(prof.lambda_hi.back() * e.modulus_hi);
  }
  Rational abs_det = abs(prof.det);
  if (abs_det < prof.lambda_lo.back() || abs_det > prof.lambda_hi.back())
    throw Error("eigenvalue moduli inconsistent with det A");
  prof.lambda.back() = to_double(abs_det);
  prof.lambda_lo.back() = abs_det;
  prof.lambda_hi.back() = abs_det;
  return prof;
}

std::vector<double> dynamical_degrees(const SpectralProfile& profile) { return profile.lambda; }

std::string to_string(GapStatus s) {
  switch (s) {
    case GapStatus::CertifiedGap: return "CERTIFIED_GAP";
    case GapStatus::CertifiedEqual: return "CERTIFIED_EQUAL";
    case GapStatus::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

std::vector<int> GapReport::certified_gaps() const {
  std::vector<int> ks;
  for (const Gap& g : gaps)
    if (g.status == GapStatus::CertifiedGap) ks.push_back(g.k);
  return ks;
}

GapReport gap_report(const SpectralProfile& profile, const IntegerMatrix& a) {
  if (static_cast<int>(a.rows()) != profile.m || !(char_poly(a) == profile.char_poly))
    throw std::invalid_argument("spectral profile does not belong to this matrix");
  GapReport rep;
  for (int k = 1; k < profile.m; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    const Eigenvalue& u = profile.eigenvalues[i];
    const Eigenvalue& v = profile.eigenvalues[i + 1];
    Gap g;
    g.k = k;
    g.margin = u.modulus - v.modulus;
    g.margin_lo = u.modulus_lo - v.modulus_hi;
    g.margin_hi = u.modulus_hi - v.modulus_lo;
    if (profile.certified_equal_modulus(i, i + 1)) {
      g.status = GapStatus::CertifiedEqual;
      g.margin = 0;
      g.margin_lo = g.margin_hi = 0;
    } else if (g.margin_lo > 0) {
      g.status = GapStatus::CertifiedGap;
    }
    rep.gaps.push_back(g);
  }
  return rep;
}

std::string to_string(RootOfUnityStatus s) {
  switch (s) {
    case RootOfUnityStatus::ExactYes: return "EXACT_YES";
    case RootOfUnityStatus::ExactNo: return "EXACT_NO";
    case RootOfUnityStatus::NumericProbablyNo: return "NUMERIC_PROBABLY_NO";
    case RootOfUnityStatus::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

namespace {

// a + b r in Q[r]/(r^2 - p r + q).
struct QuadElem {
  Rational a, b;
};

QuadElem mul(const QuadElem& x, const QuadElem& y, const Rational& p, const Rational& q) {
  Rational bd = x.b * y.b;
  return {x.a * y.a - bd * q, x.a * y.b + x.b * y.a + bd * p};
}

// Is the root of r^2 - p r + q on the side of sign(c.im) inside the disk?
bool quadratic_root_in_disk(const Integer& p, const Integer& q, const Eigenvalue& e, unsigned bits) {
  Integer disc = 4 * q - p * p;
  if (disc <= 0) return false;
  Rational dx = e.center.re - Rational(p, 2);
  Rational s_lo = sqrt_lower(Rational(disc), bits) / 2;
  Rational s_hi = sqrt_upper(Rational(disc), bits) / 2;
  Rational y = abs(e.center.im);
  Rational dy = std::max(abs(y - s_lo), abs(y - s_hi));
  return dx * dx + dy * dy <= e.radius * e.radius;
}

}  // namespace

RootOfUnityVerdict root_of_unity_test(const SpectralProfile& profile, int k) {
  if (k < 1 || k >= profile.m) throw OutOfRange("k must satisfy 1 <= k < m");
  const Eigenvalue& mu = profile.eigenvalues[static_cast<std::size_t>(k - 1)];
  const Eigenvalue& nu = profile.eigenvalues[static_cast<std::size_t>(k)];
  if (mu.real || mu.conjugate_id != nu.root_id || mu.root_id == nu.root_id)
    throw PreconditionViolated("mu_" + std::to_string(k) + " and mu_" + std::to_string(k + 1) +
                               " are not a certified conjugate pair");

  RootOfUnityVerdict v;
  v.denominator_bound = kRootOfUnityDenominatorBound;
  const double turn = std::atan2(to_double(mu.center.im), to_double(mu.center.re)) / std::numbers::pi;
  v.turn = turn;

  Integer p = round_of(2 * mu.center.re);
  Integer q = round_of(mu.center.norm());
  Polynomial quad(std::vector<Rational>{Rational(q), Rational(-p), Rational(1)});
  if (profile.factors.at(mu.factor).divisible_by(quad) &&
      quadratic_root_in_disk(p, q, mu, 2 * profile.precision + 64)) {
    v.quadratic = std::make_pair(p, q);
    // mu / conj(mu) = mu^2 / q = (p r - q) / q.
    const Rational pr(p), qr(q);
    const QuadElem ratio{Rational(-1), pr / qr};
    QuadElem power{Rational(1), Rational(0)};
    for (int n = 1; n <= 6; ++n) {
      power = mul(power, ratio, pr, qr);
      if (n == 5) continue;
      if (power.a == 1 && power.b == 0) {
        v.status = RootOfUnityStatus::ExactYes;
        v.order = n;
        return v;
      }
    }
    v.status = RootOfUnityStatus::ExactNo;
    return v;
  }

  double frac = turn - std::floor(turn);
  v.approximation = rationalize(frac, v.denominator_bound);
  const double err = std::fabs(frac - to_double(v.approximation));
  const double tol = to_double(mu.radius) / (std::numbers::pi * mu.modulus) + 1e-15;
  if (err <= tol) {
    v.status = RootOfUnityStatus::Undecided;
    v.order = static_cast<int>(v.approximation.get_den().get_si());
  } else {
    v.status = RootOfUnityStatus::NumericProbablyNo;
  }
  return v;
}

RootOfUnityVerdict root_of_unity_test(const IntegerMatrix& a, int k, unsigned precision) {
  return root_of_unity_test(spectral_profile(a, precision), k);
}

}  // namespace monodyn::spectral
