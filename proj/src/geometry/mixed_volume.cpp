#include "monodyn/geometry/mixed_volume.hpp"

#include "monodyn/error.hpp"
#include "monodyn/exact/linalg.hpp"
#include "monodyn/exact/polynomial.hpp"

namespace monodyn::geometry {

namespace {

int validate(std::span<const MixedBody> bodies) {
  if (bodies.empty()) throw DegeneratePolytope("mixed volume of no bodies");
  const int m = bodies[0].body.ambient_dim();
  int total = 0;
  for (const auto& b : bodies) {
    if (b.body.ambient_dim() != m) throw SizeMismatch("mixed volume of bodies in different dimensions");
    if (b.multiplicity < 1) throw DegeneratePolytope("mixed volume multiplicities must be positive");
    total += b.multiplicity;
  }
  if (total != m) {
    throw DegeneratePolytope("multiplicities sum to " + std::to_string(total) + ", expected " + std::to_string(m));
  }
  return m;
}

Rational scaled_sum_volume(std::span<const MixedBody> bodies, const std::vector<Rational>& t) {
  Polytope sum = scale(bodies[0].body, t[0]);
  for (std::size_t i = 1; i < bodies.size(); ++i) sum = minkowski_sum(sum, scale(bodies[i].body, t[i]));
  return volume(sum);
}

// Coefficient of x^k of the degree <= samples.size()-1 polynomial through
// (0, samples[0]), (1, samples[1]), ...
Rational interpolated_coefficient(const std::vector<Rational>& samples, int k) {
  const std::size_t n = samples.size();
  Polynomial total;
  for (std::size_t s = 0; s < n; ++s) {
    Polynomial basis(std::vector<Rational>{Rational(1)});
    Rational denom = 1;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s) continue;
      basis = basis * Polynomial::linear(Rational(static_cast<long>(t)));
      denom *= Rational(static_cast<long>(s)) - Rational(static_cast<long>(t));
    }
    total = total + (samples[s] / denom) * basis;
  }
  return total.coeff(static_cast<std::size_t>(k));
}

// Coefficient of t_j^{k_j} ... t_{s-2}^{k_{s-2}} in Vol(t_0 K_0 + ... + K_{s-1})
// with t_0 .. t_{j-1} already fixed.
Rational extract(std::span<const MixedBody> bodies, std::vector<Rational>& t, std::size_t j, int m) {
  if (j + 1 == bodies.size()) return scaled_sum_volume(bodies, t);
  std::vector<Rational> samples;
  for (int x = 0; x <= m; ++x) {
    t[j] = x;
    samples.push_back(extract(bodies, t, j + 1, m));
  }
  return interpolated_coefficient(samples, bodies[j].multiplicity);
}

}  // namespace

Rational mixed_volume(std::span<const MixedBody> bodies) {
  const int m = validate(bodies);
  if (bodies.size() == 1) return volume(bodies[0].body);
  std::vector<Rational> t(bodies.size(), Rational(1));
  Rational coeff = extract(bodies, t, 0, m);
  Integer num = 1;
  for (const auto& b : bodies) num *= factorial(static_cast<unsigned>(b.multiplicity));
  return coeff * Rational(num) / Rational(factorial(static_cast<unsigned>(m)));
}

SubdivisionResult mixed_volume_subdivision(std::span<const MixedBody> bodies, std::uint64_t seed, int max_lifts) {
  const int m = validate(bodies);
  const auto mu = static_cast<std::size_t>(m);
  const std::size_t s = bodies.size();
  SubdivisionResult out;
  out.seed = seed;

  Polytope sum = bodies[0].body;
  for (std::size_t i = 1; i < s; ++i) sum = minkowski_sum(sum, bodies[i].body);
  if (sum.dim() < m) {
    out.mixed_volume = 0;
    return out;
  }
  const Rational total_volume = volume(sum);

  Rng rng(seed);
  for (int attempt = 1; attempt <= max_lifts; ++attempt) {
    out.lifts_tried = attempt;
    std::vector<std::vector<Integer>> lift(s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t v = 0; v < bodies[i].body.vertices().size(); ++v)
        lift[i].push_back(Integer(static_cast<long>(rng.uniform(1, kMaxLift))));

    // Every combination of one vertex per body, lifted by the summed heights.
    std::vector<Point> lifted;
    std::vector<std::size_t> choice(s, 0);
    for (;;) {
      Point p(mu + 1);
      for (std::size_t i = 0; i < s; ++i) {
        const Point& v = bodies[i].body.vertices()[choice[i]];
        for (std::size_t c = 0; c < mu; ++c) p[c] += v[c];
        p[mu] += lift[i][choice[i]];
      }
      lifted.push_back(std::move(p));
      std::size_t i = 0;
      while (i < s && ++choice[i] == bodies[i].body.vertices().size()) choice[i++] = 0;
      if (i == s) break;
    }
    HullData hull = compute_hull(lifted);
    // Lifts that are affine on the whole sum (always the case for sums of
    // segments) leave a single cell: the sum itself.
    std::vector<std::vector<std::vector<Point>>> faces;
    if (hull.dim == m) {
      std::vector<std::vector<Point>> all;
      for (const auto& b : bodies) all.push_back(b.body.vertices());
      faces.push_back(std::move(all));
    } else {
      for (const HullFacet& f : hull.facets) {
        if (f.normal[mu] >= 0) continue;
        std::vector<std::vector<Point>> pieces;
        for (std::size_t i = 0; i < s; ++i) {
          const auto& verts = bodies[i].body.vertices();
          std::vector<Rational> score(verts.size());
          Rational best;
          for (std::size_t v = 0; v < verts.size(); ++v) {
            Rational sc = Rational(f.normal[mu] * lift[i][v]);
            for (std::size_t c = 0; c < mu; ++c) sc += Rational(f.normal[c]) * verts[v][c];
            score[v] = sc;
            if (v == 0 || sc > best) best = sc;
          }
          std::vector<Point> piece;
          for (std::size_t v = 0; v < verts.size(); ++v)
            if (score[v] == best) piece.push_back(verts[v]);
          pieces.push_back(std::move(piece));
        }
        faces.push_back(std::move(pieces));
      }
    }

    std::vector<MixedCell> cells;
    bool fine = true;
    Rational covered = 0;
    for (auto& pieces : faces) {
      MixedCell cell;
      int dim_sum = 0;
      std::size_t count = 0;
      RationalMatrix edges(mu, mu);
      std::size_t row = 0;
      for (auto& piece : pieces) {
        RationalMatrix diffs(piece.size() > 1 ? piece.size() - 1 : 1, mu);
        for (std::size_t r = 1; r < piece.size(); ++r)
          for (std::size_t c = 0; c < mu; ++c) diffs(r - 1, c) = piece[r][c] - piece[0][c];
        const int d = piece.size() > 1 ? static_cast<int>(rank(diffs)) : 0;
        dim_sum += d;
        count += piece.size();
        for (std::size_t r = 1; r < piece.size() && row < mu; ++r, ++row)
          for (std::size_t c = 0; c < mu; ++c) edges(row, c) = piece[r][c] - piece[0][c];
        cell.pieces.push_back(std::move(piece));
        cell.dims.push_back(d);
      }
      if (dim_sum != m || count - s != mu) {
        fine = false;
        break;
      }
      Integer denom = 1;
      for (int d : cell.dims) denom *= factorial(static_cast<unsigned>(d));
      cell.volume = abs(det(edges)) / Rational(denom);
      cell.mixed = true;
      for (std::size_t i = 0; i < s; ++i)
        if (cell.dims[i] != bodies[i].multiplicity) cell.mixed = false;
      covered += cell.volume;
      cells.push_back(std::move(cell));
    }
    if (!fine) continue;
    if (covered != total_volume) throw Error("mixed subdivision does not cover the Minkowski sum");

    Rational mixed_sum = 0;
    for (const auto& c : cells)
      if (c.mixed) mixed_sum += c.volume;
    Integer num = 1;
    for (const auto& b : bodies) num *= factorial(static_cast<unsigned>(b.multiplicity));
    out.mixed_volume = mixed_sum * Rational(num) / Rational(factorial(static_cast<unsigned>(m)));
    out.cells = std::move(cells);
    return out;
  }
  throw DegenerateLift("no fine mixed subdivision after " + std::to_string(max_lifts) + " lifts");
}

}  // namespace monodyn::geometry
