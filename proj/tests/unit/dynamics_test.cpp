#include <catch2/catch_amalgamated.hpp>

#include "monodyn/dynamics/degree.hpp"
#include "monodyn/dynamics/model.hpp"
#include "monodyn/dynamics/search.hpp"
#include "monodyn/error.hpp"
#include "support/oracles.hpp"

using namespace monodyn;
using namespace monodyn::dynamics;
using Catch::Approx;

namespace {

const IntegerMatrix kVandermonde{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}};

Rational pairing(const IntegerVector& v, const RationalVector& u) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += Rational(v[i]) * u[i];
  return s;
}

void check_dual(const SkewModel& model) {
  for (int i = 0; i < model.m; ++i)
    for (int j = 0; j < model.m; ++j)
      CHECK(pairing(model.v[static_cast<std::size_t>(i)], model.u[static_cast<std::size_t>(j)]) == (i == j ? 1 : 0));
}

std::vector<RationalVector> random_basis(Rng& rng, int m) {
  for (;;) {
    std::vector<RationalVector> cols;
    for (int j = 0; j < m; ++j) {
      RationalVector c;
      for (int i = 0; i < m; ++i) c.push_back(make_rational(rng.uniform(-4, 4), rng.uniform(1, 3)));
      cols.push_back(std::move(c));
    }
    if (det(RationalMatrix::from_columns(cols)) != 0) return cols;
  }
}

IntegerMatrix neg(const IntegerMatrix& a) {
  IntegerMatrix r = a;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = -a(i, j);
  return r;
}

void self_certify(const IntegerMatrix& a, const StabilizationResult& res) {
  REQUIRE(res.found);
  REQUIRE(res.certificates.size() == res.ks.size());
  const IntegerMatrix target = res.l0 ? mat_pow(a, static_cast<unsigned>(*res.l0)) : a;
  for (std::size_t i = 0; i < res.ks.size(); ++i) {
    auto again = check_k_stable(target, res.model, res.ks[i]);
    CHECK(again.verdict == Verdict::StableBySign);
    CHECK(again.sign == res.certificates[i].sign);
  }
}

}  // namespace

TEST_CASE("skew model examples", "[dynamics]") {
  auto std3 = SkewModel::standard(3);
  for (int j = 0; j < 3; ++j) {
    CHECK(std3.alpha[static_cast<std::size_t>(j)] == 1);
    CHECK(std3.u[static_cast<std::size_t>(j)] == std3.epsilon[static_cast<std::size_t>(j)]);
  }
  check_dual(std3);

  std::vector<RationalVector> twice{{2, 0}, {0, 2}};
  auto m2 = build_skew_model(twice);
  CHECK(m2.alpha[0] == 2);
  CHECK(m2.alpha[1] == 2);
  CHECK(m2.u[0] == RationalVector{1, 0});
  CHECK(m2.u[1] == RationalVector{0, 1});

  std::vector<RationalVector> diag{{1, 1}, {1, -1}};
  auto md = build_skew_model(diag);
  check_dual(md);
  CHECK(md.v[0] == IntegerVector{1, 1});
  CHECK(md.v[1] == IntegerVector{1, -1});
  CHECK(md.alpha[0] == 2);

  std::vector<RationalVector> dep{{1, 2}, {2, 4}};
  CHECK_THROWS_AS(build_skew_model(dep), SingularBasis);
  std::vector<RationalVector> ragged{{1, 2}, {2}};
  CHECK_THROWS_AS(build_skew_model(ragged), SizeMismatch);
}

TEST_CASE("skew model duality on random bases", "[dynamics][property]") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto model = build_skew_model(random_basis(rng, 2 + trial % 3));
    check_dual(model);
    for (const auto& a : model.alpha) CHECK(a > 0);
  }
}

TEST_CASE("pullback examples", "[dynamics]") {
  auto model = SkewModel::standard(2);
  CHECK(pullback_matrix(IntegerMatrix::identity(2), model, 1).matrix == RationalMatrix::identity(2));
  CHECK(pullback_matrix(IntegerMatrix{{1, 1}, {1, 2}}, model, 1).matrix == RationalMatrix{{1, 1}, {1, 2}});
  auto p = pullback_matrix(IntegerMatrix{{-3, 0}, {0, 1}}, model, 1);
  CHECK(p.matrix == RationalMatrix{{3, 0}, {0, 1}});
  CHECK(p.signed_minors.entries() == RationalMatrix{{-3, 0}, {0, 1}});
  CHECK(pullback_matrix(IntegerMatrix::identity(4), SkewModel::standard(4), 2).matrix == RationalMatrix::identity(6));

  CHECK_THROWS_AS(pullback_matrix(IntegerMatrix::identity(2), model, 0), OutOfRange);
  CHECK_THROWS_AS(pullback_matrix(IntegerMatrix::identity(2), model, 2), OutOfRange);
  CHECK_THROWS_AS(pullback_matrix(IntegerMatrix{{1, 2}, {2, 4}}, model, 1), SingularMatrix);
  CHECK_THROWS_AS(pullback_matrix(IntegerMatrix::identity(3), model, 1), SizeMismatch);
}

TEST_CASE("stability verdict examples", "[dynamics]") {
  auto model = SkewModel::standard(3);
  for (int k = 1; k <= 2; ++k) {
    auto c = check_k_stable(kVandermonde, model, k);
    CHECK(c.verdict == Verdict::StableBySign);
    CHECK(c.sign == 1);
  }
  auto minus = neg(kVandermonde);
  CHECK(check_k_stable(minus, model, 1).sign == -1);
  CHECK(check_k_stable(minus, model, 2).sign == 1);

  auto d = check_k_stable(IntegerMatrix{{-3, 0}, {0, 1}}, SkewModel::standard(2), 1);
  CHECK(d.verdict == Verdict::NotSignUniform);
  CHECK_FALSE(d.failing_power);
  CHECK(d.horizon == kDefaultHorizon);

  auto rot = check_k_stable(IntegerMatrix{{1, 1}, {-1, 1}}, SkewModel::standard(2), 1);
  CHECK(rot.verdict == Verdict::FunctorialityFails);
  CHECK(rot.failing_power == 2);
  CHECK(to_string(rot.verdict) == "FUNCTORIALITY_FAILS");
}

TEST_CASE("uniform signs make the pullback functorial", "[dynamics][property]") {
  Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 2 + trial % 3;
    IntegerMatrix a = oracle::stp_vandermonde(rng, m);
    if (trial % 2 == 1) a = neg(a);
    auto model = SkewModel::standard(m);
    for (int k = 1; k < m; ++k) {
      auto cert = check_k_stable(a, model, k);
      REQUIRE(cert.verdict == Verdict::StableBySign);
      auto pull = pullback_matrix(a, model, k).matrix;
      RationalMatrix power = pull;
      for (unsigned n = 2; n <= 10; ++n) {
        power = power * pull;
        CHECK(pullback_matrix(mat_pow(a, n), model, k).matrix == power);
      }
    }
  }
}

TEST_CASE("totally nonnegative matrices are stable on the standard model", "[dynamics][property]") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 2 + trial % 3;
    // Product of a Vandermonde with a positive diagonal and a unipotent
    // upper bidiagonal stays totally nonnegative.
    IntegerMatrix a = oracle::stp_vandermonde(rng, m);
    IntegerMatrix u = IntegerMatrix::identity(static_cast<std::size_t>(m));
    for (int i = 0; i + 1 < m; ++i) u(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)) = rng.uniform(0, 3);
    a = a * u;
    for (int k = 1; k < m; ++k) {
      auto c = check_k_stable(a, SkewModel::standard(m), k);
      CHECK(c.verdict == Verdict::StableBySign);
      CHECK(c.sign == 1);
    }
  }
}

TEST_CASE("minor signs agree in the epsilon and u bases", "[dynamics][property]") {
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 2 + trial % 3;
    auto a = oracle::random_integer_matrix(rng, m, -3, 3);
    if (det(a) == 0) continue;
    auto eps = random_basis(rng, m);
    auto model = build_skew_model(eps);
    RationalMatrix in_eps = change_of_basis(to_rational(a), eps);
    RationalMatrix in_u = in_model_basis(a, model);
    for (int k = 1; k < m; ++k) {
      auto e = exterior_power(in_eps, k).entries();
      auto u = exterior_power(in_u, k).entries();
      for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j) CHECK(sign(e(i, j)) == sign(u(i, j)));
    }
  }
}

TEST_CASE("basis search examples", "[dynamics][search]") {
  auto stp = stabilize_basis_search(IntegerMatrix{{2, 1}, {1, 1}});
  self_certify(IntegerMatrix{{2, 1}, {1, 1}}, stp);
  CHECK(stp.model.epsilon == SkewModel::standard(2).epsilon);

  auto diag = stabilize_basis_search(IntegerMatrix{{3, 0}, {0, 1}});
  self_certify(IntegerMatrix{{3, 0}, {0, 1}}, diag);

  IntegerMatrix sym{{3, -1}, {-1, 2}};
  auto r = stabilize_basis_search(sym);
  self_certify(sym, r);
  CHECK(r.certificates[0].sign == 1);
  CHECK_FALSE(r.log.empty());

  IntegerMatrix sym_neg = neg(sym);
  auto rn = stabilize_basis_search(sym_neg);
  self_certify(sym_neg, rn);
  CHECK(rn.certificates[0].sign == -1);

  IntegerMatrix three{{4, 1, -1}, {1, 3, 0}, {-1, 0, 2}};
  auto r3 = stabilize_basis_search(three);
  self_certify(three, r3);
  CHECK(r3.ks == std::vector<int>{1, 2});
}

TEST_CASE("basis search is deterministic for a seed", "[dynamics][search]") {
  IntegerMatrix b{{5, -2, 1}, {-2, 4, -1}, {1, -1, 3}};
  auto x = stabilize_basis_search(b);
  auto y = stabilize_basis_search(b);
  REQUIRE(x.found);
  CHECK(x.model.epsilon == y.model.epsilon);
  CHECK(x.log == y.log);
}

TEST_CASE("basis search preconditions", "[dynamics][search]") {
  CHECK_THROWS_AS(stabilize_basis_search(IntegerMatrix{{2, 1}, {-1, 2}}), PreconditionViolated);
  CHECK_THROWS_AS(stabilize_basis_search(IntegerMatrix{{2, 0}, {0, -3}}), PreconditionViolated);
  CHECK_THROWS_AS(stabilize_basis_search(IntegerMatrix::identity(2)), PreconditionViolated);
}

TEST_CASE("power search examples", "[dynamics][search]") {
  const std::vector<int> k1{1};
  auto model2 = SkewModel::standard(2);

  auto stp = find_power_l0(IntegerMatrix{{2, 1}, {1, 1}}, model2, k1);
  self_certify(IntegerMatrix{{2, 1}, {1, 1}}, stp);
  CHECK(stp.l0 == 1);

  IntegerMatrix alt{{-3, 0}, {0, 1}};
  PowerSearchOptions single;
  single.confirm_window = 0;
  auto once = find_power_l0(alt, model2, k1, single);
  self_certify(alt, once);
  CHECK(once.l0 == 2);

  PowerSearchOptions windowed;
  windowed.confirm_window = 1;
  windowed.max_l = 10;
  auto none = find_power_l0(alt, model2, k1, windowed);
  CHECK_FALSE(none.found);
  CHECK_FALSE(none.l0);
  REQUIRE(none.trace.size() == 11);
  for (const auto& t : none.trace) CHECK(t.signs[0] == (t.l % 2 == 0 ? 1 : 0));

  IntegerMatrix minus{{-2, -1}, {-1, -1}};
  auto m = find_power_l0(minus, model2, k1);
  self_certify(minus, m);
  CHECK(m.l0 == 1);
  CHECK(m.certificates[0].sign == -1);
  CHECK(m.trace[1].signs[0] == 1);

  CHECK_THROWS_AS(find_power_l0(IntegerMatrix{{2, 1}, {-1, 2}}, model2, k1), PreconditionViolated);
  const std::vector<int> bad{2};
  CHECK_THROWS_AS(find_power_l0(IntegerMatrix{{2, 1}, {1, 1}}, model2, bad), OutOfRange);
}

TEST_CASE("orthant basis examples", "[dynamics][search]") {
  IntegerMatrix d{{3, 0, 0}, {0, 2, 0}, {0, 0, 1}};
  CHECK(orthant_basis(d).epsilon == SkewModel::standard(3).epsilon);

  IntegerMatrix a{{2, 1}, {1, 1}};
  auto model = orthant_basis(a);
  const std::vector<int> k1{1};
  auto r = find_power_l0(a, model, k1);
  self_certify(a, r);
  CHECK(*r.l0 <= 4);

  IntegerMatrix sym{{3, -1}, {-1, 2}};
  auto ms = orthant_basis(sym);
  CHECK_FALSE(ms.epsilon == SkewModel::standard(2).epsilon);
  self_certify(sym, find_power_l0(sym, ms, k1));

  IntegerMatrix rot{{2, -1, 0}, {1, 2, 0}, {0, 0, 1}};
  auto mr = orthant_basis(rot);
  const std::vector<int> k2{2};
  auto rr = find_power_l0(rot, mr, k2);
  self_certify(rot, rr);

  CHECK_THROWS_AS(orthant_basis(IntegerMatrix{{2, 1}, {-1, 2}}), PreconditionViolated);
}

TEST_CASE("degree examples", "[dynamics][degree]") {
  auto simplex2 = geometry::standard_simplex(2);
  auto simplex3 = geometry::standard_simplex(3);
  for (int k = 0; k <= 3; ++k) CHECK(degree(IntegerMatrix::identity(3), k, simplex3) == 1);
  for (int k = 0; k <= 3; ++k) CHECK(degree(IntegerMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, k, simplex3) == (1 << k));
  CHECK(degree(IntegerMatrix{{1, 1}, {0, 1}}, 1, simplex2) == 2);

  auto seq = degree_sequence(IntegerMatrix{{2, 0}, {0, 2}}, 1, simplex2, 3);
  CHECK(seq.values == std::vector<Rational>{2, 4, 8});
  auto shear = degree_sequence(IntegerMatrix{{1, 1}, {0, 1}}, 1, simplex2, 3);
  CHECK(shear.values == std::vector<Rational>{2, 3, 4});
  for (const auto& v : degree_sequence(IntegerMatrix::identity(2), 1, simplex2, 4).values) CHECK(v == 1);

  CHECK(degree(IntegerMatrix::identity(2), 1, geometry::unit_cube(2)) == 2);

  CHECK_THROWS_AS(degree(IntegerMatrix::identity(2), 3, simplex2), OutOfRange);
  CHECK_THROWS_AS(degree(IntegerMatrix::identity(2), -1, simplex2), OutOfRange);
  std::vector<geometry::Point> flat{{0, 0}, {1, 1}};
  CHECK_THROWS_AS(degree(IntegerMatrix::identity(2), 1, geometry::convex_hull(flat)), DegeneratePolytope);
  CHECK_THROWS_AS(degree(IntegerMatrix{{1, 2}, {2, 4}}, 1, simplex2), SingularMatrix);
  CHECK_THROWS_AS(degree_sequence(IntegerMatrix::identity(2), 1, simplex2, 0), OutOfRange);
}

TEST_CASE("deg_1 on projective space matches the support-function formula", "[dynamics][degree][property]") {
  Rng rng(21);
  int checked = 0;
  while (checked < 30) {
    const int m = 2 + checked % 2;
    auto a = oracle::random_integer_matrix(rng, m, -3, 3);
    if (det(a) == 0) continue;
    CHECK(degree(a, 1, geometry::standard_simplex(m)) == Rational(oracle::projective_deg1(a)));
    ++checked;
  }
}

TEST_CASE("degree scaling laws", "[dynamics][degree][property]") {
  Rng rng(22);
  int checked = 0;
  while (checked < 20) {
    const int m = 2 + checked % 2;
    auto a = oracle::random_integer_matrix(rng, m, -3, 3);
    const Integer d = det(a);
    if (d == 0) continue;
    auto p = checked % 4 < 2 ? geometry::standard_simplex(m) : geometry::unit_cube(m);
    auto id = IntegerMatrix::identity(static_cast<std::size_t>(m));
    CHECK(degree(a, m, p) == Rational(abs(d)) * degree(id, m, p));
    CHECK(degree(a, 0, p) == degree(id, 0, p));
    ++checked;
  }
  for (long c = 1; c <= 4; ++c) {
    IntegerMatrix ci{{c, 0, 0}, {0, c, 0}, {0, 0, c}};
    for (int k = 0; k <= 3; ++k) {
      Integer ck = 1;
      for (int i = 0; i < k; ++i) ck *= c;
      CHECK(degree(ci, k, geometry::standard_simplex(3)) == Rational(ck));
    }
  }
}

TEST_CASE("product divisor of the standard model is the unit cube", "[dynamics][degree]") {
  CHECK(product_divisor_polytope(SkewModel::standard(3)) == geometry::unit_cube(3));
  std::vector<RationalVector> eps{{1, 1}, {1, -1}};
  auto z = product_divisor_polytope(build_skew_model(eps));
  CHECK(geometry::volume(z) == Rational(1, 2));
}

TEST_CASE("lambda estimates", "[dynamics][degree]") {
  auto simplex2 = geometry::standard_simplex(2);
  IntegerMatrix two{{2, 0}, {0, 2}};
  auto e = lambda_estimate(degree_sequence(two, 1, simplex2, 6), spectral::spectral_profile(two));
  CHECK(e.estimate == 2.0);
  CHECK(e.lambda == Approx(2));

  IntegerMatrix d{{2, 0}, {0, 3}};
  auto ed = lambda_estimate(degree_sequence(d, 1, simplex2, 20), spectral::spectral_profile(d));
  CHECK(ed.relative_deviation < 0.05);
  CHECK(ed.lambda == Approx(3));

  IntegerMatrix g{{2, 1}, {1, 1}};
  auto eg = lambda_estimate(degree_sequence(g, 1, simplex2, 20), spectral::spectral_profile(g));
  CHECK(eg.relative_deviation < 0.05);
  CHECK(eg.lambda == Approx(2.6180339887));

  CHECK_THROWS_AS(lambda_estimate(degree_sequence(g, 1, simplex2, 4), spectral::spectral_profile(g)),
                  InsufficientData);
}
