// monodyn: command-line front end for monomial-map dynamics.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "monodyn/cli/acceptance.hpp"
#include "monodyn/cli/commands.hpp"

#ifndef MONODYN_GOLDEN_PATH
#define MONODYN_GOLDEN_PATH "tests/golden/acceptance.json"
#endif

using namespace monodyn;
using namespace monodyn::cli;

namespace {

struct Options {
  JobConfig cfg;
  std::string output = "json";
  bool no_timing = false;

  std::string matrix_file;
  std::string basis_file;
  std::string polytope_file;
  std::string sequence_file;
  std::string from_degrees;
  std::string envelope_file;
  std::optional<int> k;
  std::vector<int> ks;
  std::string mode = "basis";
  std::string divisor = "simplex";
  bool orthant = false;
  bool cayley_hamilton = false;

  std::string golden = MONODYN_GOLDEN_PATH;
  std::string report_out;
  bool update_golden = false;
};

void emit(const Options& o, const Json& envelope) {
  if (o.output == "table") {
    std::cout << render_table(envelope);
  } else {
    std::cout << envelope.dump(2) << '\n';
  }
}

Json degree_input(const Options& o, const std::string& matrix_file) {
  Json in{{"matrix", matrix_json(parse_matrix(load_json_file(matrix_file)))}};
  if (!o.k) throw InputError("--k is required");
  in["k"] = *o.k;
  in["divisor"] = o.divisor;
  if (!o.basis_file.empty()) in["basis"] = basis_json(parse_basis(load_json_file(o.basis_file)));
  if (!o.polytope_file.empty()) {
    if (o.divisor != "custom") throw InputError("--polytope needs --divisor custom");
    in["polytope"] = polytope_json(parse_polytope(load_json_file(o.polytope_file)));
  }
  return in;
}

// Canonical input echo; re-parsing it reproduces the computation.
Json build_input(const std::string& command, const Options& o) {
  if (command == "recurrence") {
    Json in = Json::object();
    if (!o.from_degrees.empty()) {
      if (!o.sequence_file.empty()) throw InputError("give either a sequence file or --from-degrees, not both");
      in["from_degrees"] = degree_input(o, o.from_degrees);
      in["cayley_hamilton"] = o.cayley_hamilton;
    } else {
      if (o.sequence_file.empty()) throw InputError("a sequence file or --from-degrees is required");
      in["sequence"] = sequence_json(parse_sequence(load_json_file(o.sequence_file)));
    }
    return in;
  }
  if (command == "degrees") return degree_input(o, o.matrix_file);
  Json in{{"matrix", matrix_json(parse_matrix(load_json_file(o.matrix_file)))}};
  if (!o.basis_file.empty()) in["basis"] = basis_json(parse_basis(load_json_file(o.basis_file)));
  if (command == "stability" && o.k) in["k"] = *o.k;
  if (command == "stabilize") {
    in["mode"] = o.mode;
    if (!o.ks.empty()) in["ks"] = o.ks;
    if (o.orthant) in["orthant"] = true;
  }
  return in;
}

int run(const std::string& command, const Options& o) {
  Json input = Json::object();
  JobConfig cfg = o.cfg;
  std::string cmd = command;
  try {
    if (command == "replay") {
      const Json env = load_json_file(o.envelope_file);
      if (!env.contains("command") || !env.contains("input") || !env.contains("config"))
        throw InputError(o.envelope_file + ": not a report envelope");
      cmd = env["command"].get<std::string>();
      input = env["input"];
      try {
        cfg = JobConfig::from_json(env["config"]);
      } catch (const Json::exception&) {
        throw InputError(o.envelope_file + ": malformed config");
      }
    } else {
      input = build_input(command, o);
    }
    const auto start = std::chrono::steady_clock::now();
    const CommandResult res = run_command(cmd, input, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(o, make_envelope(cmd, input, cfg, res, o.no_timing ? nullptr : &ms));
    return res.exit_code;
  } catch (const std::exception& e) {
    const auto [code, kind] = classify_error(e);
    emit(o, error_envelope(cmd, input, cfg, kind, e.what(), code));
    std::cerr << "monodyn " << cmd << ": " << kind << ": " << e.what() << '\n';
    return code;
  }
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int verify_acceptance(const Options& o) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kLibraryCriteria; ++id) {
    results.push_back(run_criterion(id, o.cfg.seed));
    const auto& r = results.back();
    std::cerr << "[" << (r.passed ? "PASS" : "FAIL") << "] " << r.id << ". " << r.title << ": " << r.detail << " ("
              << static_cast<long>(r.elapsed_ms) << " ms)\n";
  }
  const Json report = acceptance_report(results, o.cfg.seed);
  const std::string text = report.dump(2) + "\n";
  if (!o.report_out.empty()) {
    std::ofstream out(o.report_out, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "cannot write " << o.report_out << '\n';
      return kExitInputError;
    }
  } else if (o.output == "table") {
    for (const auto& r : results)
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << ". " << r.title << ": " << r.detail << '\n';
  } else {
    std::cout << text;
  }
  if (o.update_golden) {
    std::ofstream g(o.golden, std::ios::binary);
    g << text;
    if (!g) {
      std::cerr << "cannot write " << o.golden << '\n';
      return kExitInputError;
    }
    std::cerr << "golden file written: " << o.golden << '\n';
  } else {
    std::string golden;
    if (!read_file(o.golden, golden)) {
      std::cerr << "cannot read golden file " << o.golden << '\n';
      return kExitInputError;
    }
    if (golden != text) {
      std::istringstream a(golden), b(text);
      std::string la, lb;
      int line = 0, shown = 0;
      while (shown < 10) {
        const bool ha = static_cast<bool>(std::getline(a, la));
        const bool hb = static_cast<bool>(std::getline(b, lb));
        if (!ha && !hb) break;
        ++line;
        if (ha && hb && la == lb) continue;
        std::cerr << "line " << line << ":\n  golden: " << (ha ? la : "<eof>") << "\n  actual: " << (hb ? lb : "<eof>")
                  << '\n';
        ++shown;
      }
      std::cerr << "report differs from " << o.golden << '\n';
      return kExitNotFound;
    }
    std::cerr << "report matches " << o.golden << '\n';
  }
  return report["all_passed"].get<bool>() ? kExitOk : kExitNotFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamics of monomial maps: spectra, stability, stabilization, degrees, recurrences"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--precision", o.cfg.precision, "Initial working precision in bits");
  app.add_option("--max-order", o.cfg.max_order, "Largest recurrence order tested");
  app.add_option("--horizon", o.cfg.horizon, "Powers checked by the functoriality falsifier");
  app.add_option("--max-l", o.cfg.max_l, "Largest power tried by the power search");
  app.add_option("--confirm-window", o.cfg.confirm_window, "Extra powers that must stay sign-uniform");
  app.add_option("--denominator-bound", o.cfg.denominator_bound, "Largest denominator in rationalized bases");
  app.add_option("--seed", o.cfg.seed, "Random seed");
  app.add_option("--attempts", o.cfg.attempts, "Basis search attempt budget");
  app.add_option("--perturb-scale", o.cfg.perturb_scale, "Size of random perturbations between attempts");
  app.add_option("--terms", o.cfg.terms, "Length N of degree sequences");
  app.add_option("--output", o.output, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--no-timing", o.no_timing, "Leave timing out of the report");

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues, dynamical degrees, gaps and root-of-unity tests");
  spectrum->add_option("matrix", o.matrix_file, "Matrix JSON file")->required();

  auto* stability = app.add_subcommand("stability", "k-stability certificates on a skew model");
  stability->add_option("matrix", o.matrix_file, "Matrix JSON file")->required();
  stability->add_option("--basis", o.basis_file, "Basis JSON file (default: standard)");
  stability->add_option("--k", o.k, "Degree k (default: all 1..m-1)");

  auto* stabilize = app.add_subcommand("stabilize", "Search for a stabilizing basis or power");
  stabilize->add_option("matrix", o.matrix_file, "Matrix JSON file")->required();
  stabilize->add_option("--mode", o.mode, "basis or power")->check(CLI::IsMember({"basis", "power"}));
  stabilize->add_option("--basis", o.basis_file, "Model basis for power mode");
  stabilize->add_option("--ks", o.ks, "Degrees k for power mode (default: certified gaps)")->delimiter(',');
  stabilize->add_flag("--orthant", o.orthant, "Power mode on a numerically built orthant basis");

  auto* degrees = app.add_subcommand("degrees", "Exact degree sequence deg_k(f^n), n = 1..N");
  degrees->add_option("matrix", o.matrix_file, "Matrix JSON file")->required();
  degrees->add_option("--k", o.k, "Degree k")->required();
  degrees->add_option("--divisor", o.divisor, "simplex, product or custom")
      ->check(CLI::IsMember({"simplex", "product", "custom"}));
  degrees->add_option("--polytope", o.polytope_file, "Polytope JSON file for --divisor custom");
  degrees->add_option("--basis", o.basis_file, "Model basis for --divisor product");

  auto* rec = app.add_subcommand("recurrence", "Minimal recurrence and Hankel ranks of a sequence");
  rec->add_option("sequence", o.sequence_file, "Sequence JSON file");
  rec->add_option("--from-degrees", o.from_degrees, "Matrix JSON file whose degree sequence is analyzed");
  rec->add_option("--k", o.k, "Degree k for --from-degrees");
  rec->add_option("--divisor", o.divisor, "simplex, product or custom")
      ->check(CLI::IsMember({"simplex", "product", "custom"}));
  rec->add_option("--polytope", o.polytope_file, "Polytope JSON file for --divisor custom");
  rec->add_option("--basis", o.basis_file, "Model basis for --divisor product");
  rec->add_flag("--cayley-hamilton", o.cayley_hamilton, "Check against char_poly(Lambda^k A) even without stability");

  auto* replay = app.add_subcommand("replay", "Re-run the computation recorded in a report envelope");
  replay->add_option("envelope", o.envelope_file, "Report JSON file")->required();

  auto* verify = app.add_subcommand("verify-acceptance", "Regenerate the acceptance tables and diff them");
  verify->add_option("--golden", o.golden, "Golden report");
  verify->add_option("--report-out", o.report_out, "Write the report here instead of stdout");
  verify->add_flag("--update-golden", o.update_golden, "Overwrite the golden report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  for (auto* sub : app.get_subcommands()) {
    const std::string name = sub->get_name();
    if (name == "verify-acceptance") {
      try {
        o.cfg.validate();
        return verify_acceptance(o);
      } catch (const std::exception& e) {
        std::cerr << "verify-acceptance: " << e.what() << '\n';
        return classify_error(e).first;
      }
    }
    return run(name, o);
  }
  return kExitInputError;
}
