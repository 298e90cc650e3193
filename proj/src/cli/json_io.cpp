#include "monodyn/cli/json_io.hpp"

#include <fstream>
#include <sstream>

namespace monodyn::cli {

namespace {

Rational rational_field(const Json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.dump());
  } catch (const std::invalid_argument&) {
  }
  throw InputError(where + ": expected a rational written as a string such as \"3/7\"");
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("top level: expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<RationalVector> rational_rows(const Json& rows, const std::string& name) {
  if (!rows.is_array()) throw InputError(name + ": expected an array of arrays");
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = name + "[" + std::to_string(i) + "]";
    if (!rows[i].is_array()) throw InputError(where + ": expected an array");
    RationalVector r;
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      r.push_back(rational_field(rows[i][j], where + "[" + std::to_string(j) + "]"));
    if (!out.empty() && r.size() != out.front().size()) throw InputError(where + ": length differs from " + name + "[0]");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

IntegerMatrix parse_matrix(const Json& j) {
  const Json& mj = member(j, "m");
  if (!mj.is_number_integer()) throw InputError("m: expected an integer");
  const long m = mj.get<long>();
  if (m < 2 || m > kMaxDimension)
    throw InputError("m: dimension " + std::to_string(m) + " outside [2, " + std::to_string(kMaxDimension) + "]");
  auto rows = rational_rows(member(j, "entries"), "entries");
  if (rows.size() != static_cast<std::size_t>(m)) throw InputError("entries: expected " + std::to_string(m) + " rows");
  IntegerMatrix a(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != static_cast<std::size_t>(m))
      throw InputError("entries[" + std::to_string(i) + "]: expected " + std::to_string(m) + " entries");
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      if (!is_integer(rows[i][k]))
        throw InputError("entries[" + std::to_string(i) + "][" + std::to_string(k) + "]: expected an integer");
      a(i, k) = rows[i][k].get_num();
    }
  }
  return a;
}

std::vector<RationalVector> parse_basis(const Json& j) {
  auto vs = rational_rows(member(j, "vectors"), "vectors");
  if (vs.empty()) throw InputError("vectors: empty basis");
  if (vs.size() != vs.front().size()) throw InputError("vectors: expected m vectors of length m");
  return vs;
}

geometry::Polytope parse_polytope(const Json& j) {
  auto vs = rational_rows(member(j, "vertices"), "vertices");
  if (vs.empty()) throw InputError("vertices: empty vertex list");
  return geometry::convex_hull(vs);
}

std::vector<Rational> parse_sequence(const Json& j) {
  const Json& v = member(j, "values");
  if (!v.is_array()) throw InputError("values: expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_field(v[i], "values[" + std::to_string(i) + "]"));
  return out;
}

Json strings(std::span<const Rational> xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

Json strings(std::span<const Integer> xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

Json strings(const RationalMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(strings(m.row(i)));
  return out;
}

Json matrix_json(const IntegerMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(strings(a.row(i)));
  return Json{{"m", a.rows()}, {"entries", rows}};
}

Json basis_json(std::span<const RationalVector> vs) {
  Json rows = Json::array();
  for (const auto& v : vs) rows.push_back(strings(v));
  return Json{{"vectors", rows}};
}

Json polytope_json(const geometry::Polytope& p) {
  Json rows = Json::array();
  for (const auto& v : p.vertices()) rows.push_back(strings(v));
  return Json{{"vertices", rows}};
}

Json sequence_json(std::span<const Rational> xs) { return Json{{"values", strings(xs)}}; }

}  // namespace monodyn::cli
