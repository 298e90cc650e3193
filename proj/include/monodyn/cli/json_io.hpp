#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "monodyn/error.hpp"
#include "monodyn/exact/linalg.hpp"
#include "monodyn/geometry/polytope.hpp"

namespace monodyn::cli {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the offending field or line.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Reads a JSON document; syntax errors report line and column.
Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& source);

/// {"m": int, "entries": [[string, ...], ...]}. Plain JSON integers are
/// accepted in place of strings.
IntegerMatrix parse_matrix(const Json& j);
/// {"vectors": [[string rational, ...], ...]}.
std::vector<RationalVector> parse_basis(const Json& j);
/// {"vertices": [[string rational, ...], ...]}.
geometry::Polytope parse_polytope(const Json& j);
/// {"values": [string, ...]}.
std::vector<Rational> parse_sequence(const Json& j);

Json matrix_json(const IntegerMatrix& a);
Json basis_json(std::span<const RationalVector> vs);
Json polytope_json(const geometry::Polytope& p);
Json sequence_json(std::span<const Rational> xs);

Json strings(std::span<const Rational> xs);
Json strings(std::span<const Integer> xs);
Json strings(const RationalMatrix& m);

}  // namespace monodyn::cli
