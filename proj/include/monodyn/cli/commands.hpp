#pragma once

#include <cstdint>
#include <string>

#include "monodyn/cli/json_io.hpp"
#include "monodyn/dynamics/search.hpp"
#include "monodyn/spectral/spectral.hpp"

namespace monodyn::cli {

inline constexpr const char* kToolName = "monodyn";
inline constexpr const char* kToolVersion = "0.1.0";

/// 4 marks an internal failure that no input should trigger.
enum ExitCode : int { kExitOk = 0, kExitNotFound = 1, kExitInputError = 2, kExitPrecondition = 3, kExitInternal = 4 };

struct JobConfig {
  unsigned precision = spectral::kDefaultPrecision;
  int max_order = 12;
  int horizon = dynamics::kDefaultHorizon;
  int max_l = 64;
  int confirm_window = 8;
  long denominator_bound = 10000;
  std::uint64_t seed = dynamics::kDefaultSeed;
  int attempts = 64;
  double perturb_scale = 0.5;
  /// Sequence length N for degree tables.
  int terms = 10;

  /// InputError unless every budget is positive (the confirm window may be 0).
  void validate() const;
  Json to_json() const;
  static JobConfig from_json(const Json& j);
};

/// Payload of one subcommand, before it is wrapped in the envelope.
struct CommandResult {
  Json result;
  /// Which parts of the result are exact and which are numeric.
  Json provenance = Json::object();
  int exit_code = kExitOk;
};

/// Runs a subcommand on its canonical input echo. Every subcommand's input is
/// an object; see the README for the fields. The same echo and config always
/// reproduce the same result.
CommandResult run_command(const std::string& command, const Json& input, const JobConfig& cfg);

/// {"tool", "version", "command", "input", "config", "result", "provenance",
/// "exit_code"} plus "timing_ms" when timing is given.
Json make_envelope(const std::string& command, const Json& input, const JobConfig& cfg, const CommandResult& res,
                   const double* timing_ms);

/// Envelope for a failure: "error": {"kind", "message"} with its exit code.
Json error_envelope(const std::string& command, const Json& input, const JobConfig& cfg, const std::string& kind,
                    const std::string& message, int exit_code);

/// Maps a library exception onto an exit code and a short kind label.
std::pair<int, std::string> classify_error(const std::exception& e);

/// Plain-text rendering of an envelope for --output table.
std::string render_table(const Json& envelope);

}  // namespace monodyn::cli
