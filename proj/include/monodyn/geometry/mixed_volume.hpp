#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "monodyn/geometry/polytope.hpp"

namespace monodyn::geometry {

/// A body repeated `multiplicity` times in a mixed volume.
struct MixedBody {
  Polytope body;
  int multiplicity = 1;
};

/// Vol(K_1[k_1], ..., K_s[k_s]), the coefficient in
///   Vol(t_1 K_1 + ... + t_s K_s) = sum m!/(k_1!...k_s!) Vol(K[k]) t^k,
/// extracted by exact interpolation one scaling variable at a time.
/// Throws DegeneratePolytope if the multiplicities are not positive or do not
/// sum to the ambient dimension, SizeMismatch on mixed ambient dimensions.
Rational mixed_volume(std::span<const MixedBody> bodies);

/// One cell C_1 + ... + C_s of a fine mixed subdivision; pieces[i] lists the
/// vertices of bodies[i] spanning C_i.
struct MixedCell {
  std::vector<std::vector<Point>> pieces;
  std::vector<int> dims;
  Rational volume;
  /// dims[i] == multiplicity of body i, so the cell contributes.
  bool mixed = false;
};

struct SubdivisionResult {
  Rational mixed_volume;
  std::vector<MixedCell> cells;
  /// Seed of the lift that produced the subdivision.
  std::uint64_t seed = 0;
  int lifts_tried = 0;
};

inline constexpr std::int64_t kMaxLift = 1000000;

/// Independent computation of the same number from a fine mixed subdivision
/// of K_1 + ... + K_s induced by random integral lifts in [1, kMaxLift].
/// A lift whose lower cells are not fine is discarded and redrawn; after
/// max_lifts failures DegenerateLift is thrown.
SubdivisionResult mixed_volume_subdivision(std::span<const MixedBody> bodies, std::uint64_t seed,
                                           int max_lifts = 16);

}  // namespace monodyn::geometry
