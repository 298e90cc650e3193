#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "monodyn/error.hpp"
#include "monodyn/spectral/spectral.hpp"
#include "support/oracles.hpp"

using namespace monodyn;
using namespace monodyn::spectral;
using Catch::Approx;

namespace {

IntegerMatrix block(long b1, long b2, long c) {
  return IntegerMatrix{{b1, -b2, 0}, {b2, b1, 0}, {0, 0, c}};
}

bool contains(const Eigenvalue& e, const Rational& re, const Rational& im) {
  ComplexRational d{e.center.re - re, e.center.im - im};
  return d.norm() <= e.radius * e.radius;
}

}  // namespace

TEST_CASE("profile of a diagonal matrix", "[spectral]") {
  auto p = spectral_profile(IntegerMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}});
  REQUIRE(p.eigenvalues.size() == 3);
  CHECK(p.eigenvalues[0].exact);
  CHECK(p.eigenvalues[0].center.re == 5);
  CHECK(p.eigenvalues[1].center.re == 3);
  CHECK(p.eigenvalues[2].center.re == 2);
  auto lam = dynamical_degrees(p);
  REQUIRE(lam.size() == 4);
  CHECK(lam[0] == 1.0);
  CHECK(lam[1] == Approx(5));
  CHECK(lam[2] == Approx(15));
  CHECK(lam[3] == 30.0);
  CHECK(p.lambda_lo[3] == 30);
  CHECK(p.lambda_hi[3] == 30);
}

TEST_CASE("identity and diag(2,3) degrees", "[spectral]") {
  auto id = spectral_profile(IntegerMatrix::identity(4));
  for (double l : dynamical_degrees(id)) CHECK(l == 1.0);
  auto p = spectral_profile(IntegerMatrix{{2, 0}, {0, 3}});
  auto lam = dynamical_degrees(p);
  CHECK(lam[1] == Approx(3));
  CHECK(lam[2] == 6.0);
}

TEST_CASE("rotation-scaling block has a conjugate pair", "[spectral]") {
  IntegerMatrix a{{2, 1}, {-1, 2}};
  auto p = spectral_profile(a);
  REQUIRE(p.eigenvalues.size() == 2);
  const Eigenvalue& top = p.eigenvalues[0];
  const Eigenvalue& bot = p.eigenvalues[1];
  CHECK_FALSE(top.real);
  CHECK(top.conjugate_id == bot.root_id);
  CHECK(contains(top, 2, 1));
  CHECK(contains(bot, 2, -1));
  CHECK(p.moduli[0] == Approx(std::sqrt(5.0)));
  CHECK(p.moduli[1] == Approx(std::sqrt(5.0)));
  CHECK(p.lambda[2] == 5.0);
  auto g = gap_report(p, a);
  CHECK(g.at(1).status == GapStatus::CertifiedEqual);
}

TEST_CASE("golden-ratio matrix", "[spectral]") {
  IntegerMatrix a{{2, 1}, {1, 1}};
  auto p = spectral_profile(a);
  const double phi2 = (3 + std::sqrt(5.0)) / 2;
  CHECK(p.moduli[0] == Approx(phi2).epsilon(1e-14));
  CHECK(p.moduli[1] == Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-14));
  CHECK(p.lambda[1] == Approx(2.618).margin(1e-3));
  // Enclosures are tight at 128 bits.
  CHECK(p.eigenvalues[0].radius < Rational(1, 1 << 30));
  auto g = gap_report(p, a);
  CHECK(g.at(1).status == GapStatus::CertifiedGap);
  CHECK(g.at(1).margin_lo > 0);
}

TEST_CASE("block matrix degrees and gaps", "[spectral]") {
  IntegerMatrix a = block(2, 1, 2);
  auto p = spectral_profile(a);
  auto lam = dynamical_degrees(p);
  CHECK(lam[1] == Approx(std::sqrt(5.0)));
  CHECK(lam[2] == Approx(5));
  CHECK(lam[3] == 10.0);
  auto g = gap_report(p, a);
  CHECK(g.at(1).status == GapStatus::CertifiedEqual);
  CHECK(g.at(2).status == GapStatus::CertifiedGap);
  CHECK(g.certified_gaps() == std::vector<int>{2});
}

TEST_CASE("negative eigenvalue ordering", "[spectral]") {
  IntegerMatrix a{{-3, 0}, {0, 1}};
  auto p = spectral_profile(a);
  CHECK(p.eigenvalues[0].center.re == -3);
  CHECK(p.permutation.size() == 2);
  CHECK(gap_report(p, a).at(1).status == GapStatus::CertifiedGap);
}

TEST_CASE("plus-minus pairs are certified equal", "[spectral]") {
  // Eigenvalues +-sqrt(2) and 1.
  IntegerMatrix a{{0, 2, 0}, {1, 0, 0}, {0, 0, 1}};
  auto p = spectral_profile(a);
  auto g = gap_report(p, a);
  CHECK(g.at(1).status == GapStatus::CertifiedEqual);
  CHECK(g.at(2).status == GapStatus::CertifiedGap);
  CHECK(p.eigenvalues[0].center.re > 0);

  IntegerMatrix d{{2, 0}, {0, -2}};
  auto q = spectral_profile(d);
  CHECK(gap_report(q, d).at(1).status == GapStatus::CertifiedEqual);
  CHECK(q.eigenvalues[0].center.re == 2);
}

TEST_CASE("repeated eigenvalues", "[spectral]") {
  IntegerMatrix a{{2, 1, 0}, {0, 2, 0}, {0, 0, 3}};
  auto p = spectral_profile(a);
  CHECK(p.eigenvalues[1].root_id == p.eigenvalues[2].root_id);
  auto g = gap_report(p, a);
  CHECK(g.at(1).status == GapStatus::CertifiedGap);
  CHECK(g.at(2).status == GapStatus::CertifiedEqual);
}

TEST_CASE("singular and mismatched input", "[spectral]") {
  CHECK_THROWS_AS(spectral_profile(IntegerMatrix{{1, 2}, {2, 4}}), SingularMatrix);
  auto p = spectral_profile(IntegerMatrix{{2, 0}, {0, 3}});
  CHECK_THROWS_AS(gap_report(p, IntegerMatrix{{2, 0}, {0, 5}}), std::invalid_argument);
}

TEST_CASE("lambda_m equals |det A|", "[spectral][property]") {
  Rng rng(2024);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
    IntegerMatrix a = oracle::random_integer_matrix(rng, n, -6, 6);
    Integer d = oracle::leibniz_det(a);
    if (d == 0) continue;
    auto p = spectral_profile(a);
    CHECK(p.lambda_lo.back() == Rational(abs(d)));
    CHECK(p.lambda.back() == Approx(std::fabs(to_double(d))));
    Rational lo = 1, hi = 1;
    for (const auto& e : p.eigenvalues) {
      lo *= e.modulus_lo;
      hi *= e.modulus_hi;
    }
    CHECK(lo <= abs(d));
    CHECK(abs(d) <= hi);
    // Moduli are sorted.
    for (std::size_t i = 0; i + 1 < p.moduli.size(); ++i) CHECK(p.moduli[i] >= p.moduli[i + 1] - 1e-12);
  }
}

TEST_CASE("triangular matrices expose their diagonal", "[spectral][property]") {
  Rng rng(99);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 6);
    IntegerMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        long v = static_cast<long>(rng.uniform(-9, 9));
        if (i == j && v == 0) v = 1;
        a(i, j) = v;
      }
    auto p = spectral_profile(a);
    std::vector<Integer> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(a(i, i));
    std::vector<Integer> got;
    for (const auto& e : p.eigenvalues) {
      REQUIRE(e.exact);
      REQUIRE(e.center.im == 0);
      REQUIRE(is_integer(e.center.re));
      got.push_back(e.center.re.get_num());
    }
    std::sort(diag.begin(), diag.end());
    std::sort(got.begin(), got.end());
    CHECK(diag == got);
  }
}

TEST_CASE("certification is monotone under refinement", "[spectral][property]") {
  Rng rng(7);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 4);
    IntegerMatrix a = oracle::random_integer_matrix(rng, n, -4, 4);
    if (det(a) == 0) continue;
    auto lo = gap_report(spectral_profile(a, 128), a);
    auto hi = gap_report(spectral_profile(a, 1024), a);
    for (std::size_t k = 0; k < lo.gaps.size(); ++k) {
      auto s = lo.gaps[k].status, u = hi.gaps[k].status;
      CHECK_FALSE((s == GapStatus::CertifiedGap && u == GapStatus::CertifiedEqual));
      CHECK_FALSE((s == GapStatus::CertifiedEqual && u == GapStatus::CertifiedGap));
    }
  }
}

TEST_CASE("root of unity examples", "[spectral]") {
  // r^2 + 1: mu/conj(mu) = -1.
  auto v = root_of_unity_test(block(0, 1, 3), 2);
  CHECK(v.status == RootOfUnityStatus::ExactYes);
  CHECK(v.order == 2);

  // r^2 - 4r + 5: (3+4i)/5.
  v = root_of_unity_test(block(2, 1, 1), 1);
  CHECK(v.status == RootOfUnityStatus::ExactNo);
  REQUIRE(v.quadratic);
  CHECK(v.quadratic->first == 4);
  CHECK(v.quadratic->second == 5);

  // r^2 - r + 1: mu is a primitive sixth root, mu/conj(mu) a primitive cube root.
  IntegerMatrix c{{0, -1}, {1, 1}};
  v = root_of_unity_test(c, 1);
  CHECK(v.status == RootOfUnityStatus::ExactYes);
  CHECK(v.order == 3);

  CHECK_THROWS_AS(root_of_unity_test(IntegerMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}, 1), PreconditionViolated);
  CHECK_THROWS_AS(root_of_unity_test(block(2, 1, 1), 2), PreconditionViolated);
  CHECK_THROWS_AS(root_of_unity_test(block(2, 1, 1), 3), OutOfRange);
}

TEST_CASE("root of unity on the rotation-block family", "[spectral][property]") {
  for (long b1 = -4; b1 <= 4; ++b1)
    for (long b2 = -4; b2 <= 4; ++b2) {
      if (b1 == 0 || b2 == 0) continue;
      // Third eigenvalue smaller in modulus so the pair sits at k = 1.
      IntegerMatrix a = block(b1, b2, 1);
      auto v = root_of_unity_test(a, 1);
      INFO("b1=" << b1 << " b2=" << b2);
      if (std::labs(b1) == std::labs(b2)) {
        CHECK(v.status == RootOfUnityStatus::ExactYes);
        CHECK(v.order == 4);
      } else {
        CHECK(v.status == RootOfUnityStatus::ExactNo);
      }
    }
}

TEST_CASE("numeric root of unity path", "[spectral]") {
  // x^3 - x - 1 irreducible cubic with one real root > 1 and a conjugate pair
  // of modulus < 1; the pair has no quadratic factor over Q.
  IntegerMatrix a{{0, 0, 1}, {1, 0, 1}, {0, 1, 0}};
  auto p = spectral_profile(a);
  REQUIRE(gap_report(p, a).at(2).status == GapStatus::CertifiedEqual);
  auto v = root_of_unity_test(p, 2);
  CHECK_FALSE(v.quadratic);
  CHECK(v.status == RootOfUnityStatus::NumericProbablyNo);
  CHECK(v.denominator_bound == 1000000);
}
