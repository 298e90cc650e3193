#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "monodyn/cli/json_io.hpp"

namespace monodyn::cli {

/// Criteria 1..kLibraryCriteria are computed in-process; the last one
/// (determinism of the whole report) needs two runs of the tool.
inline constexpr int kLibraryCriteria = 9;
inline constexpr int kCriteriaCount = 10;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  /// Deterministic table of the computed values.
  Json table;
  double elapsed_ms = 0;
};

std::string criterion_title(int id);

/// Throws OutOfRange for ids outside 1..kLibraryCriteria.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Report without timings, so two runs with one seed are byte-identical.
Json acceptance_report(std::span<const CriterionResult> results, std::uint64_t seed);

}  // namespace monodyn::cli
