#include "monodyn/cli/acceptance.hpp"

#include <chrono>
#include <cstdio>

#include "monodyn/cli/commands.hpp"
#include "monodyn/dynamics/degree.hpp"
#include "monodyn/dynamics/search.hpp"
#include "monodyn/geometry/mixed_volume.hpp"
#include "monodyn/recurrence/recurrence.hpp"
#include "monodyn/spectral/spectral.hpp"

namespace monodyn::cli {

namespace {

using dynamics::SkewModel;
using dynamics::Verdict;

// Six significant digits keep numeric columns stable across libm versions.
std::string fixed6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

IntegerMatrix random_matrix(Rng& rng, int m, long lo, long hi) {
  IntegerMatrix a(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = rng.uniform(lo, hi);
  return a;
}

IntegerMatrix scalar(int m, long c) {
  IntegerMatrix a(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) = c;
  return a;
}

const IntegerMatrix kVandermonde{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}};
const IntegerMatrix kRotationBlock{{2, 1, 0}, {-1, 2, 0}, {0, 0, 2}};

bool stable_at(const IntegerMatrix& a, const SkewModel& model, int k) {
  return dynamics::check_k_stable(a, model, k).verdict == Verdict::StableBySign;
}

CriterionResult cauchy_binet(std::uint64_t seed) {
  CriterionResult r;
  Rng rng(seed + 1);
  int identities = 0, mismatches = 0;
  for (int pair = 0; pair < 100; ++pair) {
    const int m = 2 + pair % 4;
    const IntegerMatrix a = random_matrix(rng, m, -5, 5);
    const IntegerMatrix b = random_matrix(rng, m, -5, 5);
    for (int k = 1; k <= m; ++k) {
      ++identities;
      const auto lhs = exterior_power(a * b, k).entries();
      const auto rhs = exterior_power(a, k).entries() * exterior_power(b, k).entries();
      if (!(lhs == rhs)) ++mismatches;
    }
  }
  r.passed = mismatches == 0;
  r.detail = std::to_string(identities) + " identities on 100 pairs, " + std::to_string(mismatches) + " mismatches";
  r.table = Json{{"pairs", 100}, {"identities", identities}, {"mismatches", mismatches}};
  return r;
}

geometry::Polytope random_simplex(Rng& rng, int m) {
  for (;;) {
    std::vector<geometry::Point> pts;
    for (int i = 0; i <= m; ++i) {
      geometry::Point p;
      for (int j = 0; j < m; ++j) p.push_back(Rational(rng.uniform(-3, 3)));
      pts.push_back(std::move(p));
    }
    auto s = geometry::convex_hull(pts);
    if (s.dim() == m && static_cast<int>(s.vertices().size()) == m + 1) return s;
  }
}

CriterionResult mixed_volume_agreement(std::uint64_t seed) {
  CriterionResult r;
  Rng rng(seed + 2);
  Json rows = Json::array();
  int disagreements = 0;
  for (int pair = 0; pair < 50; ++pair) {
    const int m = 2 + pair % 2;
    const int k1 = m == 2 ? 1 : 1 + (pair / 2) % 2;
    const std::vector<geometry::MixedBody> bodies{{random_simplex(rng, m), k1}, {random_simplex(rng, m), m - k1}};
    const Rational interp = geometry::mixed_volume(bodies);
    const auto sub = geometry::mixed_volume_subdivision(bodies, seed + 1000 + static_cast<std::uint64_t>(pair));
    if (interp != sub.mixed_volume) ++disagreements;
    rows.push_back(Json{{"m", m},
                        {"multiplicities", Json::array({k1, m - k1})},
                        {"interpolation", to_string(interp)},
                        {"subdivision", to_string(sub.mixed_volume)},
                        {"cells", sub.cells.size()}});
  }
  r.passed = disagreements == 0;
  r.detail = "50 simplex pairs, " + std::to_string(disagreements) + " disagreements";
  r.table = Json{{"pairs", rows}};
  return r;
}

CriterionResult segment_families(std::uint64_t seed) {
  CriterionResult r;
  Rng rng(seed + 3);
  Json rows = Json::array();
  int failures = 0;
  for (int fam = 0; fam < 20; ++fam) {
    const int m = 2 + fam % 3;
    IntegerMatrix u;
    do {
      u = random_matrix(rng, m, -4, 4);
    } while (det(u) == 0);
    std::vector<geometry::MixedBody> bodies;
    for (std::size_t j = 0; j < u.cols(); ++j) bodies.push_back({geometry::segment(to_rational(u).column(j)), 1});
    const Rational mv = geometry::mixed_volume(bodies);
    const Rational expected = Rational(abs(det(u))) / Rational(factorial(static_cast<unsigned>(m)));
    if (mv != expected) ++failures;
    rows.push_back(Json{{"m", m}, {"mixed_volume", to_string(mv)}, {"abs_det_over_m_factorial", to_string(expected)}});
  }
  r.passed = failures == 0;
  r.detail = "20 segment families, " + std::to_string(failures) + " failures";
  r.table = Json{{"families", rows}};
  return r;
}

CriterionResult degree_baseline(std::uint64_t) {
  CriterionResult r;
  int checks = 0, failures = 0;
  Json rows = Json::array();
  for (int m = 2; m <= 4; ++m) {
    const auto simplex = geometry::standard_simplex(m);
    for (int k = 0; k <= m; ++k) {
      ++checks;
      if (dynamics::degree(scalar(m, 1), k, simplex) != 1) ++failures;
    }
    for (int n = 1; n <= 5; ++n) {
      Json degs = Json::array();
      for (int k = 0; k <= m; ++k) {
        const Rational d = dynamics::degree(scalar(m, 1L << n), k, simplex);
        ++checks;
        if (d != Rational(Integer(1) << static_cast<unsigned>(k * n))) ++failures;
        degs.push_back(to_string(d));
      }
      rows.push_back(Json{{"m", m}, {"n", n}, {"deg_k_of_2I_power_n", degs}});
    }
  }
  r.passed = failures == 0;
  r.detail = std::to_string(checks) + " degrees checked, " + std::to_string(failures) + " failures";
  r.table = Json{{"checks", checks}, {"failures", failures}, {"rows", rows}};
  return r;
}

CriterionResult vandermonde_pipeline(std::uint64_t) {
  CriterionResult r;
  const auto model = SkewModel::standard(3);
  const auto cube = dynamics::product_divisor_polytope(model);
  bool ok = true;
  Json rows = Json::array();
  for (int k = 1; k <= 2; ++k) {
    const auto cert = dynamics::check_k_stable(kVandermonde, model, k);
    const bool stable = cert.verdict == Verdict::StableBySign && cert.sign == 1;
    const auto seq = dynamics::degree_sequence(kVandermonde, k, cube, 15);
    const CharPoly chi = char_poly(exterior_power(kVandermonde, k));
    const auto residuals = recurrence::cayley_hamilton_check(seq.values, chi);
    int nonzero = 0;
    for (const auto& x : residuals) nonzero += x != 0;
    ok = ok && stable && nonzero == 0;
    rows.push_back(Json{{"k", k},
                        {"stable_by_sign_plus", stable},
                        {"degrees", strings(seq.values)},
                        {"chi", strings(chi.lower_coeffs())},
                        {"residuals_checked", residuals.size()},
                        {"nonzero_residuals", nonzero}});
  }
  r.passed = ok;
  r.detail = ok ? "STABLE_BY_SIGN(+) for k = 1, 2; all Cayley-Hamilton residuals zero for n <= 15"
                : "stability or Cayley-Hamilton check failed";
  r.table = Json{{"rows", rows}};
  return r;
}

CriterionResult power_search_suite(std::uint64_t seed) {
  struct Case {
    const char* name;
    IntegerMatrix a;
    std::vector<int> ks;
    bool orthant;
  };
  const std::vector<Case> cases{
      {"[[2,1],[1,1]]", IntegerMatrix{{2, 1}, {1, 1}}, {1}, false},
      {"-[[2,1],[1,1]]", IntegerMatrix{{-2, -1}, {-1, -1}}, {1}, false},
      {"diag(-3,-2,-1)", IntegerMatrix{{-3, 0, 0}, {0, -2, 0}, {0, 0, -1}}, {1, 2}, false},
      {"[[3,-1],[-1,2]]", IntegerMatrix{{3, -1}, {-1, 2}}, {1}, true},
      {"[[2,-1,0],[1,2,0],[0,0,1]]", IntegerMatrix{{2, -1, 0}, {1, 2, 0}, {0, 0, 1}}, {2}, true},
  };
  CriterionResult r;
  Json rows = Json::array();
  int passed = 0;
  const dynamics::PowerSearchOptions opts;
  dynamics::BasisSearchOptions bopts;
  bopts.seed = seed;
  for (const auto& c : cases) {
    const int m = static_cast<int>(c.a.rows());
    const SkewModel model = c.orthant ? dynamics::orthant_basis(c.a, bopts) : SkewModel::standard(m);
    const auto res = dynamics::find_power_l0(c.a, model, c.ks, opts);
    bool ok = res.found && res.l0.has_value();
    if (ok) {
      // Independent re-check of every power in the confirm window.
      for (int l = *res.l0; l <= *res.l0 + opts.confirm_window && ok; ++l)
        for (int k : c.ks) ok = ok && stable_at(mat_pow(c.a, static_cast<unsigned>(l)), model, k);
    }
    passed += ok;
    Json row{{"matrix", c.name}, {"ks", c.ks}, {"orthant_basis", c.orthant}, {"found", res.found}};
    if (res.l0) row["l0"] = *res.l0;
    row["basis"] = basis_json(model.epsilon)["vectors"];
    row["window_recertified"] = ok;
    rows.push_back(row);
  }
  r.passed = passed == static_cast<int>(cases.size());
  r.detail = std::to_string(passed) + "/5 matrices: l0 found and confirm window re-certified";
  r.table = Json{{"confirm_window", opts.confirm_window}, {"max_l", opts.max_l}, {"cases", rows}};
  return r;
}

CriterionResult basis_search_suite(std::uint64_t seed) {
  const std::vector<IntegerMatrix> suite{
      IntegerMatrix{{4, 1, -1}, {1, 3, 0}, {-1, 0, 2}},   IntegerMatrix{{5, -2, 1}, {-2, 4, -1}, {1, -1, 3}},
      IntegerMatrix{{2, 1, 0}, {0, 3, 1}, {0, 0, 5}},     IntegerMatrix{{1, 2, 0}, {2, 5, 1}, {0, 1, 3}},
      IntegerMatrix{{0, 0, 8}, {1, 0, -14}, {0, 1, 7}},   IntegerMatrix{{6, 2, -1}, {1, 4, 1}, {0, 1, 1}},
      IntegerMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, IntegerMatrix{{5, 0, 1}, {1, 3, 0}, {0, 1, 1}},
      IntegerMatrix{{4, -2, 1}, {3, -1, 2}, {0, 0, 3}},   IntegerMatrix{{10, -4, 1}, {-4, 6, -2}, {1, -2, 3}},
  };
  CriterionResult r;
  dynamics::BasisSearchOptions opts;
  opts.seed = seed;
  Json rows = Json::array();
  int successes = 0, uncertified = 0;
  for (const auto& a : suite) {
    const auto res = dynamics::stabilize_basis_search(a, opts);
    Json row{{"matrix", matrix_json(a)["entries"]}, {"found", res.found}, {"attempts_used", res.attempts_used}};
    if (res.found) {
      bool certified = true;
      for (int k = 1; k <= 2; ++k) certified = certified && stable_at(a, res.model, k);
      if (certified) {
        ++successes;
      } else {
        ++uncertified;
      }
      row["basis"] = basis_json(res.model.epsilon)["vectors"];
      row["certified_k1_k2"] = certified;
    }
    rows.push_back(row);
  }
  r.passed = successes >= 8 && uncertified == 0;
  r.detail = std::to_string(successes) + "/10 bases found and certified for k = 1, 2";
  r.table = Json{{"attempt_budget", opts.attempts}, {"successes", successes}, {"cases", rows}};
  return r;
}

CriterionResult non_recurrence_evidence(std::uint64_t) {
  CriterionResult r;
  const IntegerMatrix& a = kRotationBlock;
  const auto profile = spectral::spectral_profile(a);
  const auto gaps = spectral::gap_report(profile, a);
  const auto rou = spectral::root_of_unity_test(profile, 1);
  const auto seq = dynamics::degree_sequence(a, 1, geometry::standard_simplex(3), 30);
  const auto rep = recurrence::minimal_recurrence(seq.values, 12);
  const auto prof = recurrence::hankel_ranks(seq.values, 12);
  bool increasing = true;
  for (std::size_t i = 0; i < prof.ranks.size(); ++i) increasing = increasing && prof.ranks[i] == static_cast<int>(i + 1);
  const CharPoly chi = char_poly(exterior_power(a, 1));
  const auto residuals = recurrence::cayley_hamilton_check(seq.values, chi);
  int nonzero = 0;
  for (const auto& x : residuals) nonzero += x != 0;
  const bool none = rep.status == recurrence::RecurrenceStatus::NoneUpTo && rep.max_order == 12;
  r.passed = none && increasing && nonzero > 0 && rou.status == spectral::RootOfUnityStatus::ExactNo;
  r.detail = "deg_1 for n <= 30: " + recurrence::to_string(rep.status) + "(" + std::to_string(rep.max_order) +
             "), Hankel ranks " + (increasing ? "strictly increasing" : "stagnating") + " through 12, " +
             std::to_string(nonzero) + " nonzero Cayley-Hamilton residuals";
  r.table = Json{{"gap_k1", spectral::to_string(gaps.at(1).status)},
                 {"gap_k2", spectral::to_string(gaps.at(2).status)},
                 {"root_of_unity_k1", spectral::to_string(rou.status)},
                 {"degrees", strings(seq.values)},
                 {"recurrence", recurrence::to_string(rep.status)},
                 {"max_order", rep.max_order},
                 {"hankel_ranks", prof.ranks},
                 {"chi", strings(chi.lower_coeffs())},
                 {"nonzero_residuals", nonzero},
                 {"residuals_checked", residuals.size()}};
  return r;
}

CriterionResult lambda_convergence(std::uint64_t) {
  struct Case {
    const char* name;
    IntegerMatrix a;
    int k;
  };
  const std::vector<Case> cases{
      {"diag(2,3)", IntegerMatrix{{2, 0}, {0, 3}}, 1},
      {"[[2,1],[1,1]]", IntegerMatrix{{2, 1}, {1, 1}}, 1},
      {"vandermonde", kVandermonde, 1},
      {"vandermonde", kVandermonde, 2},
      {"[[2,1,0],[-1,2,0],[0,0,2]]", kRotationBlock, 2},
  };
  CriterionResult r;
  Json rows = Json::array();
  int within = 0;
  for (const auto& c : cases) {
    const int m = static_cast<int>(c.a.rows());
    const auto seq = dynamics::degree_sequence(c.a, c.k, geometry::standard_simplex(m), 20);
    const auto est = dynamics::lambda_estimate(seq, spectral::spectral_profile(c.a));
    const bool ok = est.relative_deviation < 0.05;
    within += ok;
    rows.push_back(Json{{"matrix", c.name},
                        {"k", c.k},
                        {"deg_20", to_string(seq.values.back())},
                        {"estimate", fixed6(est.estimate)},
                        {"lambda", fixed6(est.lambda)},
                        {"relative_deviation", fixed6(est.relative_deviation)},
                        {"within_5_percent", ok}});
  }
  r.passed = within == static_cast<int>(cases.size());
  r.detail = std::to_string(within) + "/5 estimates within 5% of lambda_k";
  r.table = Json{{"n", 20}, {"cases", rows}};
  return r;
}

}  // namespace

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "Cauchy-Binet on 100 random pairs";
    case 2: return "mixed volume: interpolation equals subdivision on 50 simplex pairs";
    case 3: return "mixed volume of 20 segment families equals |det|/m!";
    case 4: return "degree baseline for the identity and powers of 2I";
    case 5: return "Vandermonde stability and Cayley-Hamilton degrees on the cube";
    case 6: return "power search on 5 matrices with certified gaps";
    case 7: return "basis search on 10 matrices with distinct positive eigenvalues";
    case 8: return "bounded non-recurrence of deg_1 for a rotation block";
    case 9: return "dynamical degree estimates from deg_k(f^20)";
    case 10: return "verify-acceptance is byte-identical across runs";
    default: break;
  }
  throw OutOfRange("criterion " + std::to_string(id) + " does not exist");
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = cauchy_binet(seed); break;
    case 2: r = mixed_volume_agreement(seed); break;
    case 3: r = segment_families(seed); break;
    case 4: r = degree_baseline(seed); break;
    case 5: r = vandermonde_pipeline(seed); break;
    case 6: r = power_search_suite(seed); break;
    case 7: r = basis_search_suite(seed); break;
    case 8: r = non_recurrence_evidence(seed); break;
    case 9: r = lambda_convergence(seed); break;
    default: throw OutOfRange("criterion " + std::to_string(id) + " is not computed in-process");
  }
  r.id = id;
  r.title = criterion_title(id);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Json acceptance_report(std::span<const CriterionResult> results, std::uint64_t seed) {
  Json crit = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    crit.push_back(Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}, {"table", r.table}});
  }
  return Json{{"tool", kToolName}, {"version", kToolVersion}, {"seed", std::to_string(seed)}, {"all_passed", all},
              {"criteria", crit}};
}

}  // namespace monodyn::cli
