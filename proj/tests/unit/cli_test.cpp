#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "monodyn/cli/commands.hpp"
#include "monodyn/cli/json_io.hpp"

using namespace monodyn;
using namespace monodyn::cli;

namespace {

Json matrix(const IntegerMatrix& a) { return matrix_json(a); }

CommandResult run(const std::string& command, const Json& input, const JobConfig& cfg = {}) {
  return run_command(command, input, cfg);
}

int exit_code_of(const std::string& command, const Json& input, const JobConfig& cfg = {}) {
  try {
    return run(command, input, cfg).exit_code;
  } catch (const std::exception& e) {
    return classify_error(e).first;
  }
}

std::vector<std::string> degree_column(const Json& result) {
  std::vector<std::string> out;
  for (const auto& row : result["degrees"]) out.push_back(row["degree"].get<std::string>());
  return out;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("monodyn_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the tool with stdout captured to a file; returns the exit status.
int tool(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = std::string(MONODYN_TOOL_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("matrix JSON parsing", "[cli]") {
  auto a = parse_matrix(parse_json_text(R"({"m": 2, "entries": [["1", "-2"], ["3", 4]]})", "inline"));
  CHECK(a == IntegerMatrix{{1, -2}, {3, 4}});
  CHECK(parse_matrix(matrix_json(a)) == a);

  CHECK_THROWS_AS(parse_matrix(parse_json_text(R"({"m": 2, "entries": [["1", "x"], ["3", "4"]]})", "t")), InputError);
  CHECK_THROWS_AS(parse_matrix(parse_json_text(R"({"m": 2, "entries": [["1/2", "0"], ["3", "4"]]})", "t")), InputError);
  CHECK_THROWS_AS(parse_matrix(parse_json_text(R"({"m": 3, "entries": [["1", "0"], ["3", "4"]]})", "t")), InputError);
  CHECK_THROWS_AS(parse_matrix(parse_json_text(R"({"entries": []})", "t")), InputError);
  try {
    parse_matrix(parse_json_text(R"({"m": 2, "entries": [["1", "2"], ["3", true]]})", "t"));
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("entries[1][1]") != std::string::npos);
  }
  try {
    parse_json_text("{\n  \"m\": 2,\n  \"entries\": [\n", "file.json");
    FAIL("expected a syntax error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("file.json:") == 0);
  }
}

TEST_CASE("basis, polytope and sequence JSON", "[cli]") {
  auto b = parse_basis(parse_json_text(R"({"vectors": [["1", "1/2"], ["0", "-3"]]})", "t"));
  CHECK(b[0] == RationalVector{1, Rational(1, 2)});
  CHECK(parse_basis(basis_json(b)) == b);
  CHECK_THROWS_AS(parse_basis(parse_json_text(R"({"vectors": [["1", "1/2", "0"]]})", "t")), InputError);

  auto p = parse_polytope(parse_json_text(R"({"vertices": [["0","0"],["1","0"],["0","1"],["1/4","1/4"]]})", "t"));
  CHECK(p.vertices().size() == 3);
  CHECK(parse_polytope(polytope_json(p)) == p);

  auto s = parse_sequence(parse_json_text(R"({"values": ["1", "2/3", -4]})", "t"));
  CHECK(s == std::vector<Rational>{1, Rational(2, 3), -4});
  CHECK(parse_sequence(sequence_json(s)) == s);
  CHECK_THROWS_AS(parse_sequence(parse_json_text(R"({"values": ["1", 2.5]})", "t")), InputError);
}

TEST_CASE("spectrum command", "[cli]") {
  auto r = run("spectrum", Json{{"matrix", matrix(IntegerMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}})}}).result;
  std::vector<double> lam;
  for (const auto& row : r["dynamical_degrees"]) lam.push_back(row["value"].get<double>());
  CHECK(lam == std::vector<double>{1, 5, 15, 30});
  CHECK(r["gaps"][0]["status"] == "CERTIFIED_GAP");
  CHECK(r["gaps"][1]["status"] == "CERTIFIED_GAP");
  CHECK(r["det"] == "30");

  auto rot = run("spectrum", Json{{"matrix", matrix(IntegerMatrix{{2, 1, 0}, {-1, 2, 0}, {0, 0, 2}})}}).result;
  CHECK(rot["gaps"][0]["status"] == "CERTIFIED_EQUAL");
  REQUIRE(rot["root_of_unity"].size() == 1);
  CHECK(rot["root_of_unity"][0]["status"] == "EXACT_NO");

  CHECK(exit_code_of("spectrum", Json{{"matrix", matrix(IntegerMatrix{{1, 2}, {2, 4}})}}) == kExitInputError);
}

TEST_CASE("stability command", "[cli]") {
  Json in{{"matrix", matrix(IntegerMatrix{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}})}, {"k", 2}};
  auto r = run("stability", in).result;
  CHECK(r["certificates"][0]["verdict"] == "STABLE_BY_SIGN(+)");
  CHECK(r["certificates"][0]["minors"].size() == 3);

  auto d = run("stability", Json{{"matrix", matrix(IntegerMatrix{{-3, 0}, {0, 1}})}, {"k", 1}}).result;
  CHECK(d["certificates"][0]["verdict"] == "NOT_SIGN_UNIFORM");

  CHECK(exit_code_of("stability", Json{{"matrix", matrix(IntegerMatrix{{2, 1}, {1, 1}})}, {"k", 2}}) ==
        kExitInputError);
}

TEST_CASE("stabilize command", "[cli]") {
  auto b = run("stabilize", Json{{"matrix", matrix(IntegerMatrix{{3, -1}, {-1, 2}})}, {"mode", "basis"}});
  CHECK(b.exit_code == kExitOk);
  CHECK(b.result["mode"] == "BASIS");
  CHECK(b.result["certificates"][0]["verdict"] == "STABLE_BY_SIGN(+)");

  auto tp = run("stabilize", Json{{"matrix", matrix(IntegerMatrix{{2, 1}, {1, 1}})}, {"mode", "basis"}});
  CHECK(tp.result["model"]["epsilon"] == Json::array({Json::array({"1", "0"}), Json::array({"0", "1"})}));

  Json eq{{"matrix", matrix(IntegerMatrix{{2, 1, 0}, {-1, 2, 0}, {0, 0, 2}})}, {"mode", "power"}, {"ks", {1}}};
  CHECK(exit_code_of("stabilize", eq) == kExitPrecondition);

  JobConfig cfg;
  cfg.confirm_window = 1;
  cfg.max_l = 6;
  auto alt = run("stabilize", Json{{"matrix", matrix(IntegerMatrix{{-3, 0}, {0, 1}})}, {"mode", "power"}}, cfg);
  CHECK(alt.exit_code == kExitNotFound);
  CHECK(alt.result["trace"].size() == 7);

  auto orth = run("stabilize", Json{{"matrix", matrix(IntegerMatrix{{3, -1}, {-1, 2}})}, {"mode", "power"}, {"orthant", true}});
  CHECK(orth.exit_code == kExitOk);
  CHECK(orth.result.contains("l0"));
}

TEST_CASE("degrees command", "[cli]") {
  JobConfig cfg;
  cfg.terms = 5;
  auto two = run("degrees", Json{{"matrix", matrix(IntegerMatrix{{2, 0}, {0, 2}})}, {"k", 1}}, cfg).result;
  CHECK(degree_column(two) == std::vector<std::string>{"2", "4", "8", "16", "32"});
  CHECK(two["integral"] == true);
  CHECK(two["lambda_estimate"]["estimate"] == 2.0);

  auto id = run("degrees", Json{{"matrix", matrix(IntegerMatrix::identity(3))}, {"k", 2}}, cfg).result;
  CHECK(degree_column(id) == std::vector<std::string>{"1", "1", "1", "1", "1"});

  // deg_1 of [[1, n], [0, 1]] on P^2 is n + 1.
  auto shear = run("degrees", Json{{"matrix", matrix(IntegerMatrix{{1, 1}, {0, 1}})}, {"k", 1}}, cfg).result;
  CHECK(degree_column(shear) == std::vector<std::string>{"2", "3", "4", "5", "6"});

  auto cube = run("degrees", Json{{"matrix", matrix(IntegerMatrix::identity(2))}, {"k", 1}, {"divisor", "product"}}, cfg).result;
  CHECK(degree_column(cube)[0] == "2");

  Json flat{{"matrix", matrix(IntegerMatrix::identity(2))},
            {"k", 1},
            {"divisor", "custom"},
            {"polytope", Json{{"vertices", {{"0", "0"}, {"1", "1"}}}}}};
  CHECK(exit_code_of("degrees", flat, cfg) == kExitInputError);
}

TEST_CASE("recurrence command", "[cli]") {
  Json fib{{"sequence", Json{{"values", {"1", "1", "2", "3", "5", "8", "13", "21"}}}}};
  auto r = run("recurrence", fib).result;
  CHECK(r["status"] == "FOUND");
  CHECK(r["order"] == 2);

  JobConfig cfg;
  cfg.terms = 12;
  cfg.max_order = 5;
  Json tp{{"from_degrees", Json{{"matrix", matrix(IntegerMatrix{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}})}, {"k", 1}, {"divisor", "product"}}}};
  auto t = run("recurrence", tp, cfg).result;
  CHECK(t["stability"] == "STABLE_BY_SIGN(+)");
  CHECK(t["status"] == "FOUND");
  CHECK(t["cayley_hamilton"]["all_zero"] == true);
  CHECK(t["cayley_hamilton"]["recurrence_divides_chi"] == true);

  cfg.terms = 30;
  cfg.max_order = 12;
  Json rot{{"from_degrees", Json{{"matrix", matrix(IntegerMatrix{{2, 1, 0}, {-1, 2, 0}, {0, 0, 2}})}, {"k", 1}}},
           {"cayley_hamilton", true}};
  auto c = run("recurrence", rot, cfg).result;
  CHECK(c["status"] == "NONE_UP_TO");
  CHECK(c["max_order"] == 12);
  CHECK(c["hankel_strictly_increasing"] == true);
  CHECK(c["cayley_hamilton"]["all_zero"] == false);

  CHECK(exit_code_of("recurrence", Json{{"sequence", Json{{"values", {"1", "2", "3"}}}}}) == kExitInputError);
}

TEST_CASE("input echo reproduces the payload", "[cli][property]") {
  JobConfig cfg;
  cfg.terms = 6;
  cfg.seed = 99;
  const std::vector<std::pair<std::string, Json>> jobs{
      {"spectrum", Json{{"matrix", matrix(IntegerMatrix{{4, 1, -1}, {1, 3, 0}, {-1, 0, 2}})}}},
      {"stability", Json{{"matrix", matrix(IntegerMatrix{{2, 1}, {1, 1}})}, {"basis", basis_json(std::vector<RationalVector>{{1, 1}, {1, -1}})}}},
      {"stabilize", Json{{"matrix", matrix(IntegerMatrix{{5, -2, 1}, {-2, 4, -1}, {1, -1, 3}})}, {"mode", "basis"}}},
      {"degrees", Json{{"matrix", matrix(IntegerMatrix{{2, 1}, {1, 1}})}, {"k", 1}}},
      {"recurrence", Json{{"sequence", Json{{"values", {"1", "3", "7", "15", "31", "63"}}}}}},
  };
  for (const auto& [command, input] : jobs) {
    const auto first = run(command, input, cfg);
    const Json env = make_envelope(command, input, cfg, first, nullptr);
    const Json reparsed = Json::parse(env.dump());
    const auto again = run(reparsed["command"].get<std::string>(), reparsed["input"], JobConfig::from_json(reparsed["config"]));
    CHECK(make_envelope(command, reparsed["input"], cfg, again, nullptr).dump() == env.dump());
  }
}

TEST_CASE("config validation and error classification", "[cli]") {
  JobConfig cfg;
  cfg.attempts = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  CHECK(classify_error(PreconditionViolated("x")).first == kExitPrecondition);
  CHECK(classify_error(SearchExhausted("x")).first == kExitNotFound);
  CHECK(classify_error(InsufficientData("x", 4)).first == kExitInputError);
  CHECK(classify_error(OutOfRange("x")).first == kExitInputError);
  CHECK(exit_code_of("nonsense", Json::object()) == kExitInputError);
}

TEST_CASE("tool exit codes and determinism", "[cli][tool]") {
  const auto dir = scratch_dir();
  write_file(dir / "tp.json", R"({"m": 2, "entries": [["2", "1"], ["1", "1"]]})");
  write_file(dir / "rot.json", R"({"m": 3, "entries": [["2", "1", "0"], ["-1", "2", "0"], ["0", "0", "2"]]})");
  write_file(dir / "alt.json", R"({"m": 2, "entries": [["-3", "0"], ["0", "1"]]})");
  write_file(dir / "bad.json", R"({"m": 2, "entries": [["2", "1"], ["1"]]})");
  write_file(dir / "fib.json", R"({"values": ["1", "1", "2", "3", "5", "8", "13", "21"]})");

  CHECK(tool("spectrum " + (dir / "tp.json").string(), dir / "o1.json") == 0);
  CHECK(tool("--no-timing stabilize --mode basis " + (dir / "tp.json").string(), dir / "a.json") == 0);
  CHECK(tool("--no-timing stabilize --mode basis " + (dir / "tp.json").string(), dir / "b.json") == 0);
  CHECK(read_file(dir / "a.json") == read_file(dir / "b.json"));
  CHECK(tool("--no-timing replay " + (dir / "a.json").string(), dir / "c.json") == 0);
  CHECK(read_file(dir / "a.json") == read_file(dir / "c.json"));

  CHECK(tool("spectrum " + (dir / "bad.json").string(), dir / "o2.json") == 2);
  CHECK(tool("spectrum " + (dir / "missing.json").string(), dir / "o3.json") == 2);
  CHECK(tool("stability --k 3 " + (dir / "tp.json").string(), dir / "o4.json") == 2);
  CHECK(tool("stabilize --mode power --ks 1 " + (dir / "rot.json").string(), dir / "o5.json") == 3);
  CHECK(tool("--confirm-window 1 --max-l 5 stabilize --mode power " + (dir / "alt.json").string(), dir / "o6.json") == 1);
  CHECK(tool("--output table recurrence " + (dir / "fib.json").string(), dir / "o7.txt") == 0);
  CHECK(read_file(dir / "o7.txt").find("status: FOUND") != std::string::npos);
  CHECK(tool("--bogus-flag spectrum " + (dir / "tp.json").string(), dir / "o8.json") == 2);

  const Json err = Json::parse(read_file(dir / "o5.json"));
  CHECK(err["error"]["kind"] == "precondition-violated");
  std::filesystem::remove_all(dir);
}
