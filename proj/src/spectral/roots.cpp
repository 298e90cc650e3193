#include "monodyn/spectral/roots.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace monodyn::spectral {

ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
  return {a.re - b.re, a.im - b.im};
}

ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  Rational n = b.norm();
  if (n == 0) throw std::domain_error("complex division by zero");
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

namespace {

using cld = std::complex<long double>;

struct Rounder {
  unsigned bits;
  ComplexRational operator()(const ComplexRational& z) const {
    return {round_to_bits(z.re, bits), round_to_bits(z.im, bits)};
  }
};

// p(z) and p'(z) by Horner, rounding after each step.
std::pair<ComplexRational, ComplexRational> eval_rounded(const std::vector<Rational>& c,
                                                         const ComplexRational& z, const Rounder& rnd) {
  ComplexRational p{c.back(), Rational(0)};
  ComplexRational dp{Rational(0), Rational(0)};
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    dp = rnd(dp * z + p);
    p = rnd(p * z + ComplexRational{c[i], Rational(0)});
  }
  return {p, dp};
}

ComplexRational eval_exact(const std::vector<Rational>& c, const ComplexRational& z) {
  ComplexRational p{c.back(), Rational(0)};
  for (std::size_t i = c.size() - 1; i-- > 0;) p = p * z + ComplexRational{c[i], Rational(0)};
  return p;
}

std::vector<cld> aberth_float(const std::vector<Rational>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<long double> a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a[i] = static_cast<long double>(to_double(c[i]));
  long double bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::fabs(a[i] / a[n]));
  long double radius = 1 + bound;
  std::vector<cld> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    long double angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(j) / static_cast<long double>(n) + 0.4L;
    z[j] = std::polar(radius * 0.9L, angle);
  }
  for (int iter = 0; iter < 800; ++iter) {
    long double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cld p = a[n], dp = 0;
      for (std::size_t k = n; k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + a[k];
      }
      if (std::abs(dp) == 0) continue;
      cld w = p / dp;
      cld s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) s += 1.0L / (z[i] - z[j]);
      }
      cld corr = w / (1.0L - w * s);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) continue;
      z[i] -= corr;
      worst = std::max(worst, std::abs(corr) / std::max(1.0L, std::abs(z[i])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

}  // namespace

std::optional<std::vector<RootEnclosure>> isolate_roots(const Polynomial& squarefree, unsigned bits) {
  if (squarefree.degree() < 1) return std::vector<RootEnclosure>{};
  const Polynomial monic = squarefree.monic();
  const std::vector<Rational>& c = monic.coeffs();
  const std::size_t n = c.size() - 1;

  if (n == 1) {
    RootEnclosure e;
    e.center = {-c[0], Rational(0)};
    e.radius = 0;
    e.real = true;
    e.conjugate = 0;
    return std::vector<RootEnclosure>{e};
  }

  Rounder rnd{bits};
  std::vector<ComplexRational> z(n);
  {
    auto start = aberth_float(c);
    for (std::size_t i = 0; i < n; ++i) {
      double re = static_cast<double>(start[i].real()), im = static_cast<double>(start[i].imag());
      if (!std::isfinite(re) || !std::isfinite(im)) {
        re = std::cos(0.4 + 6.283185307179586 * static_cast<double>(i) / static_cast<double>(n));
        im = std::sin(0.4 + 6.283185307179586 * static_cast<double>(i) / static_cast<double>(n));
      }
      z[i] = rnd(ComplexRational{from_double(re), from_double(im)});
    }
  }

  // Refine at full precision; stop once every correction is below 2^-(bits-8)
  // relative to max(1, |z|).
  Integer target_den = 1;
  mpz_mul_2exp(target_den.get_mpz_t(), target_den.get_mpz_t(), 2 * (bits > 8 ? bits - 8 : 0));
  const Rational tol_sq = make_rational(Integer(1), target_den);
  for (int iter = 0; iter < 200; ++iter) {
    bool converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      auto [p, dp] = eval_rounded(c, z[i], rnd);
      if (dp.norm() == 0) {
        converged = false;
        z[i] = rnd(z[i] + ComplexRational{Rational(1, 1 << 20), Rational(1, 1 << 21)});
        continue;
      }
      ComplexRational w = rnd(p / dp);
      ComplexRational s{Rational(0), Rational(0)};
      bool collision = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        ComplexRational diff = z[i] - z[j];
        if (diff.norm() == 0) {
          collision = true;
          break;
        }
        s = rnd(s + ComplexRational{Rational(1), Rational(0)} / diff);
      }
      if (collision) {
        converged = false;
        z[i] = rnd(z[i] + ComplexRational{Rational(1, 1 << 20), Rational(1, 1 << 19)});
        continue;
      }
      ComplexRational denom = ComplexRational{Rational(1), Rational(0)} - rnd(w * s);
      ComplexRational corr = denom.norm() == 0 ? w : rnd(w / denom);
      z[i] = rnd(z[i] - corr);
      Rational scale = z[i].norm();
      if (scale < 1) scale = 1;
      if (corr.norm() > tol_sq * scale) converged = false;
    }
    if (converged) break;
  }

  // Exact inclusion radii.
  std::vector<Rational> radius(n);
  const unsigned sqrt_bits = 2 * bits + 32;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexRational prod{Rational(1), Rational(0)};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      ComplexRational diff = z[i] - z[j];
      if (diff.norm() == 0) return std::nullopt;
      prod = prod * diff;
    }
    ComplexRational w = eval_exact(c, z[i]) / prod;
    radius[i] = Rational(static_cast<unsigned long>(n)) * sqrt_upper(w.norm(), sqrt_bits);
  }
  auto overlaps = [&](const ComplexRational& a, const Rational& ra, const ComplexRational& b, const Rational& rb) {
    Rational reach = ra + rb;
    return (a - b).norm() <= reach * reach;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (overlaps(z[i], radius[i], z[j], radius[j])) return std::nullopt;

  std::vector<RootEnclosure> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].center = z[i];
    out[i].radius = radius[i];
  }
  // The conjugate of the root in D_i is a root, so it lies in exactly one disk.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> hits;
    for (std::size_t j = 0; j < n; ++j) {
      if (overlaps(z[i].conj(), radius[i], z[j], radius[j])) hits.push_back(j);
    }
    if (hits.size() != 1) return std::nullopt;
    out[i].conjugate = hits[0];
    out[i].real = hits[0] == i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (out[i].real) {
      out[i].center.im = 0;
    } else if (out[out[i].conjugate].conjugate != i) {
      return std::nullopt;
    }
  }
  // Mirror each conjugate pair exactly so equal moduli have identical centers.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = out[i].conjugate;
    if (j != i && out[i].center.im > 0) {
      out[j].center = out[i].center.conj();
      out[j].radius = out[i].radius;
    }
  }
  return out;
}

}  // namespace monodyn::spectral
