#include "monodyn/cli/commands.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "monodyn/dynamics/degree.hpp"
#include "monodyn/recurrence/recurrence.hpp"

namespace monodyn::cli {

namespace {

// Outward-rounded doubles for enclosures.
double down(const Rational& q) {
  double d = to_double(q);
  if (std::isfinite(d) && from_double(d) > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

double up(const Rational& q) {
  double d = to_double(q);
  if (std::isfinite(d) && from_double(d) < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

const Json* find(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

int int_field(const Json& j, const char* key) {
  const Json* v = find(j, key);
  if (!v) throw InputError(std::string("missing field \"") + key + "\"");
  if (!v->is_number_integer()) throw InputError(std::string(key) + ": expected an integer");
  return v->get<int>();
}

std::string string_field(const Json& j, const char* key, const std::string& fallback) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_string()) throw InputError(std::string(key) + ": expected a string");
  return v->get<std::string>();
}

bool bool_field(const Json& j, const char* key) {
  const Json* v = find(j, key);
  if (!v) return false;
  if (!v->is_boolean()) throw InputError(std::string(key) + ": expected true or false");
  return v->get<bool>();
}

dynamics::SkewModel model_from(const Json& input, int m) {
  const Json* b = find(input, "basis");
  if (!b) return dynamics::SkewModel::standard(m);
  auto vs = parse_basis(*b);
  if (static_cast<int>(vs.size()) != m) throw InputError("basis: dimension differs from the matrix");
  return dynamics::build_skew_model(vs);
}

Json model_json(const dynamics::SkewModel& model) {
  Json v = Json::array();
  for (const auto& x : model.v) v.push_back(strings(x));
  Json u = Json::array();
  for (const auto& x : model.u) u.push_back(strings(x));
  return Json{{"epsilon", basis_json(model.epsilon)["vectors"]},
              {"v", v},
              {"u", u},
              {"alpha", strings(model.alpha)}};
}

std::string verdict_text(const dynamics::StabilityCertificate& c) {
  using dynamics::Verdict;
  switch (c.verdict) {
    case Verdict::StableBySign: return std::string("STABLE_BY_SIGN(") + (c.sign > 0 ? "+" : "-") + ")";
    case Verdict::FunctorialityFails: return "FUNCTORIALITY_FAILS(" + std::to_string(c.failing_power.value_or(0)) + ")";
    case Verdict::NotSignUniform: break;
  }
  return "NOT_SIGN_UNIFORM";
}

Json certificate_json(const dynamics::StabilityCertificate& c) {
  Json labels = Json::array();
  for (const auto& l : c.minors.labels()) labels.push_back(l.str());
  Json j{{"k", c.k}, {"verdict", verdict_text(c)}, {"sign", c.sign}, {"horizon", c.horizon}};
  if (c.failing_power) j["failing_power"] = *c.failing_power;
  j["labels"] = labels;
  j["minors"] = strings(c.minors.entries());
  j["sign_pattern"] = c.sign_pattern;
  return j;
}

dynamics::BasisSearchOptions basis_options(const JobConfig& cfg) {
  dynamics::BasisSearchOptions o;
  o.attempts = cfg.attempts;
  o.perturb_scale = cfg.perturb_scale;
  o.denominator_bound = cfg.denominator_bound;
  o.seed = cfg.seed;
  o.horizon = cfg.horizon;
  return o;
}

CommandResult spectrum(const Json& input, const JobConfig& cfg) {
  const IntegerMatrix a = parse_matrix(input.at("matrix"));
  const auto profile = spectral::spectral_profile(a, cfg.precision);
  const auto gaps = spectral::gap_report(profile, a);
  Json eig = Json::array();
  for (const auto& e : profile.eigenvalues) {
    eig.push_back(Json{{"re", to_double(e.center.re)},
                       {"im", to_double(e.center.im)},
                       {"radius", up(e.radius)},
                       {"real", e.real},
                       {"exact", e.exact},
                       {"multiplicity", e.multiplicity},
                       {"modulus", e.modulus},
                       {"modulus_lo", down(e.modulus_lo)},
                       {"modulus_hi", up(e.modulus_hi)}});
  }
  Json lam = Json::array();
  for (int k = 0; k <= profile.m; ++k) {
    const auto i = static_cast<std::size_t>(k);
    lam.push_back(Json{{"k", k}, {"value", profile.lambda[i]}, {"lo", down(profile.lambda_lo[i])}, {"hi", up(profile.lambda_hi[i])}});
  }
  Json gj = Json::array();
  for (const auto& g : gaps.gaps) {
    gj.push_back(Json{{"k", g.k},
                      {"status", spectral::to_string(g.status)},
                      {"margin", g.margin},
                      {"margin_lo", down(g.margin_lo)},
                      {"margin_hi", up(g.margin_hi)}});
  }
  Json roots = Json::array();
  for (int k = 1; k < profile.m; ++k) {
    const auto& x = profile.eigenvalues[static_cast<std::size_t>(k - 1)];
    const auto& y = profile.eigenvalues[static_cast<std::size_t>(k)];
    if (x.real || x.conjugate_id != y.root_id || x.root_id == y.root_id) continue;
    auto v = spectral::root_of_unity_test(profile, k);
    Json r{{"k", k}, {"status", spectral::to_string(v.status)}};
    if (v.order) r["order"] = *v.order;
    if (v.quadratic) r["quadratic"] = Json::array({to_string(v.quadratic->first), to_string(v.quadratic->second)});
    if (!v.quadratic) {
      r["turn"] = v.turn;
      r["approximation"] = to_string(v.approximation);
      r["denominator_bound"] = to_string(v.denominator_bound);
    }
    roots.push_back(r);
  }
  CommandResult out;
  out.result = Json{{"m", profile.m},
                    {"det", to_string(profile.det)},
                    {"char_poly", strings(profile.char_poly.lower_coeffs())},
                    {"char_poly_text", profile.char_poly.polynomial().str("r")},
                    {"precision_bits", profile.precision},
                    {"eigenvalues", eig},
                    {"dynamical_degrees", lam},
                    {"gaps", gj},
                    {"root_of_unity", roots}};
  out.provenance = Json{{"char_poly", "exact"},
                        {"det", "exact"},
                        {"eigenvalues", "numeric, certified disks at precision_bits"},
                        {"dynamical_degrees", "numeric, enclosed by [lo, hi]"},
                        {"gaps", "exact decision from certified enclosures"},
                        {"root_of_unity", "EXACT_* exact; NUMERIC_PROBABLY_NO and UNDECIDED numeric"}};
  return out;
}

CommandResult stability(const Json& input, const JobConfig& cfg) {
  const IntegerMatrix a = parse_matrix(input.at("matrix"));
  const int m = static_cast<int>(a.rows());
  const auto model = model_from(input, m);
  std::vector<int> ks;
  if (find(input, "k")) {
    ks.push_back(int_field(input, "k"));
  } else {
    for (int k = 1; k < m; ++k) ks.push_back(k);
  }
  Json certs = Json::array();
  for (int k : ks) {
    (void)dynamics::pullback_matrix(a, model, k);
    certs.push_back(certificate_json(dynamics::check_k_stable(a, model, k, cfg.horizon)));
  }
  CommandResult out;
  out.result = Json{{"model", model_json(model)}, {"certificates", certs}};
  out.provenance = Json{{"certificates", "exact"}};
  return out;
}

CommandResult stabilize(const Json& input, const JobConfig& cfg) {
  const IntegerMatrix a = parse_matrix(input.at("matrix"));
  const int m = static_cast<int>(a.rows());
  const std::string mode = string_field(input, "mode", "basis");
  dynamics::StabilizationResult res;
  Json extra = Json::object();
  if (mode == "basis") {
    res = dynamics::stabilize_basis_search(a, basis_options(cfg));
  } else if (mode == "power") {
    const bool orthant = bool_field(input, "orthant");
    if (orthant && find(input, "basis")) throw InputError("orthant: cannot be combined with an explicit basis");
    std::vector<int> ks;
    if (const Json* kj = find(input, "ks")) {
      if (!kj->is_array()) throw InputError("ks: expected an array of integers");
      for (const auto& k : *kj) {
        if (!k.is_number_integer()) throw InputError("ks: expected an array of integers");
        ks.push_back(k.get<int>());
      }
    } else {
      const auto profile = spectral::spectral_profile(a, cfg.precision);
      ks = spectral::gap_report(profile, a).certified_gaps();
      if (ks.empty()) throw PreconditionViolated("no certified spectral gap |mu_k| > |mu_{k+1}|");
    }
    const auto model = orthant ? dynamics::orthant_basis(a, basis_options(cfg)) : model_from(input, m);
    dynamics::PowerSearchOptions po;
    po.max_l = cfg.max_l;
    po.confirm_window = cfg.confirm_window;
    po.horizon = cfg.horizon;
    res = dynamics::find_power_l0(a, model, ks, po);
    extra["orthant"] = orthant;
  } else {
    throw InputError("mode: expected \"basis\" or \"power\"");
  }
  Json certs = Json::array();
  for (const auto& c : res.certificates) certs.push_back(certificate_json(c));
  Json trace = Json::array();
  for (const auto& t : res.trace) trace.push_back(Json{{"l", t.l}, {"signs", t.signs}});
  CommandResult out;
  out.result = Json{{"mode", dynamics::to_string(res.mode)}, {"found", res.found}, {"ks", res.ks}};
  if (res.l0) out.result["l0"] = *res.l0;
  if (res.mode == dynamics::StabilizationMode::Basis) out.result["attempts_used"] = res.attempts_used;
  for (auto& [key, value] : extra.items()) out.result[key] = value;
  out.result["model"] = model_json(res.model);
  out.result["certificates"] = certs;
  if (!trace.empty()) out.result["trace"] = trace;
  out.result["log"] = res.log;
  out.provenance = Json{{"certificates", "exact"},
                        {"model", res.mode == dynamics::StabilizationMode::Basis
                                      ? "heuristic search, certified exactly"
                                      : "given basis or numerically validated orthant basis"}};
  out.exit_code = res.found ? kExitOk : kExitNotFound;
  return out;
}

struct DegreeInput {
  IntegerMatrix a;
  int k = 0;
  std::string divisor;
  geometry::Polytope polytope;
  dynamics::SkewModel model;
};

DegreeInput degree_input(const Json& input) {
  DegreeInput d;
  d.a = parse_matrix(input.at("matrix"));
  const int m = static_cast<int>(d.a.rows());
  d.k = int_field(input, "k");
  d.divisor = string_field(input, "divisor", "simplex");
  d.model = model_from(input, m);
  if (d.divisor == "simplex") {
    d.polytope = geometry::standard_simplex(m);
  } else if (d.divisor == "product") {
    d.polytope = dynamics::product_divisor_polytope(d.model);
  } else if (d.divisor == "custom") {
    const Json* p = find(input, "polytope");
    if (!p) throw InputError("polytope: required for divisor \"custom\"");
    d.polytope = parse_polytope(*p);
  } else {
    throw InputError("divisor: expected \"simplex\", \"product\" or \"custom\"");
  }
  return d;
}

CommandResult degrees(const Json& input, const JobConfig& cfg) {
  const DegreeInput d = degree_input(input);
  const auto seq = dynamics::degree_sequence(d.a, d.k, d.polytope, cfg.terms);
  bool integral = true;
  for (const auto& v : seq.values) integral = integral && is_integer(v);
  if (d.divisor == "simplex" && !integral) throw Error("degree on the standard simplex is not an integer");
  CommandResult out;
  Json table = Json::array();
  for (std::size_t n = 0; n < seq.values.size(); ++n)
    table.push_back(Json{{"n", n + 1}, {"degree", to_string(seq.values[n])}});
  out.result = Json{{"k", d.k}, {"divisor", d.divisor}, {"polytope", polytope_json(d.polytope)}, {"integral", integral},
                    {"degrees", table}};
  if (seq.values.size() >= 5) {
    const auto profile = spectral::spectral_profile(d.a, cfg.precision);
    const auto est = dynamics::lambda_estimate(seq, profile);
    out.result["lambda_estimate"] = Json{{"n", est.n},
                                         {"estimate", est.estimate},
                                         {"lambda", est.lambda},
                                         {"relative_deviation", est.relative_deviation}};
  }
  out.provenance = Json{{"degrees", "exact"}, {"lambda_estimate", "numeric (double)"}};
  return out;
}

CommandResult recurrence_cmd(const Json& input, const JobConfig& cfg) {
  std::vector<Rational> seq;
  Json extra = Json::object();
  std::optional<CharPoly> chi;
  if (const Json* s = find(input, "sequence")) {
    seq = parse_sequence(*s);
  } else if (const Json* fd = find(input, "from_degrees")) {
    const DegreeInput d = degree_input(*fd);
    seq = dynamics::degree_sequence(d.a, d.k, d.polytope, cfg.terms).values;
    extra["sequence"] = strings(seq);
    const int m = static_cast<int>(d.a.rows());
    bool stable = false;
    if (d.k >= 1 && d.k < m) {
      const auto cert = dynamics::check_k_stable(d.a, d.model, d.k, cfg.horizon);
      extra["stability"] = verdict_text(cert);
      stable = cert.verdict == dynamics::Verdict::StableBySign;
    }
    if (stable || bool_field(input, "cayley_hamilton")) {
      chi = char_poly(exterior_power(d.a, d.k));
    }
  } else {
    throw InputError("expected \"sequence\" or \"from_degrees\"");
  }
  const auto rep = recurrence::minimal_recurrence(seq, cfg.max_order);
  const int size = std::min(cfg.max_order + 1, static_cast<int>((seq.size() + 1) / 2));
  const auto prof = recurrence::hankel_ranks(seq, size);
  bool increasing = true;
  for (std::size_t i = 0; i < prof.ranks.size(); ++i) increasing = increasing && prof.ranks[i] == static_cast<int>(i + 1);

  CommandResult out;
  out.result = Json{{"terms", rep.terms}, {"status", recurrence::to_string(rep.status)}, {"max_order", rep.max_order}};
  if (rep.status == recurrence::RecurrenceStatus::Found) {
    out.result["order"] = rep.order();
    out.result["recurrence"] = strings(rep.recurrence.lower_coeffs());
    out.result["recurrence_text"] = rep.recurrence.polynomial().str("r");
  }
  out.result["hankel_ranks"] = prof.ranks;
  out.result["hankel_strictly_increasing"] = increasing;
  for (auto& [key, value] : extra.items()) out.result[key] = value;
  if (chi) {
    const auto residuals = recurrence::cayley_hamilton_check(seq, *chi);
    bool zero = true;
    for (const auto& r : residuals) zero = zero && r == 0;
    Json ch{{"chi", strings(chi->lower_coeffs())},
            {"chi_text", chi->polynomial().str("r")},
            {"residuals", strings(residuals)},
            {"all_zero", zero}};
    if (rep.status == recurrence::RecurrenceStatus::Found)
      ch["recurrence_divides_chi"] = chi->polynomial().divisible_by(rep.recurrence.polynomial());
    out.result["cayley_hamilton"] = ch;
  }
  out.provenance = Json{{"recurrence", "exact, bounded order"}, {"hankel_ranks", "exact"}};
  return out;
}

void render_value(std::ostringstream& os, const Json& v) {
  if (v.is_string()) {
    os << v.get<std::string>();
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); })) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ' ';
      render_value(os, v[i]);
    }
  } else {
    os << v.dump();
  }
}

void render_section(std::ostringstream& os, const std::string& name, const Json& v, int indent);

void render_rows(std::ostringstream& os, const Json& rows, int indent) {
  std::vector<std::string> cols;
  for (const auto& r : rows)
    for (auto it = r.begin(); it != r.end(); ++it)
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::ostringstream cell;
      if (r.contains(cols[i])) render_value(cell, r[cols[i]]);
      line.push_back(cell.str());
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    os << std::string(static_cast<std::size_t>(indent), ' ');
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << line[i];
      if (i + 1 < line.size()) os << std::string(width[i] - line[i].size() + 2, ' ');
    }
    os << '\n';
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
}

void render_section(std::ostringstream& os, const std::string& name, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    os << pad << name << ":\n";
    for (auto it = v.begin(); it != v.end(); ++it) render_section(os, it.key(), it.value(), indent + 2);
  } else if (v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_object(); })) {
    os << pad << name << ":\n";
    render_rows(os, v, indent + 2);
  } else if (v.is_array() && !v.empty() && v[0].is_array()) {
    os << pad << name << ":\n";
    for (const auto& row : v) {
      os << pad << "  ";
      render_value(os, row);
      os << '\n';
    }
  } else {
    os << pad << name << ": ";
    render_value(os, v);
    os << '\n';
  }
}

}  // namespace

void JobConfig::validate() const {
  if (precision < 16) throw InputError("precision: must be at least 16 bits");
  if (max_order < 1) throw InputError("max-order: must be positive");
  if (horizon < 1) throw InputError("horizon: must be positive");
  if (max_l < 1) throw InputError("max-l: must be positive");
  if (confirm_window < 0) throw InputError("confirm-window: must be non-negative");
  if (denominator_bound < 1) throw InputError("denominator-bound: must be positive");
  if (attempts < 1) throw InputError("attempts: must be positive");
  if (!(perturb_scale > 0)) throw InputError("perturb-scale: must be positive");
  if (terms < 1) throw InputError("terms: must be positive");
}

Json JobConfig::to_json() const {
  return Json{{"precision", precision},         {"max_order", max_order},
              {"horizon", horizon},             {"max_l", max_l},
              {"confirm_window", confirm_window}, {"denominator_bound", denominator_bound},
              {"seed", std::to_string(seed)},   {"attempts", attempts},
              {"perturb_scale", perturb_scale}, {"terms", terms}};
}

JobConfig JobConfig::from_json(const Json& j) {
  JobConfig c;
  c.precision = j.at("precision").get<unsigned>();
  c.max_order = j.at("max_order").get<int>();
  c.horizon = j.at("horizon").get<int>();
  c.max_l = j.at("max_l").get<int>();
  c.confirm_window = j.at("confirm_window").get<int>();
  c.denominator_bound = j.at("denominator_bound").get<long>();
  c.seed = std::stoull(j.at("seed").get<std::string>());
  c.attempts = j.at("attempts").get<int>();
  c.perturb_scale = j.at("perturb_scale").get<double>();
  c.terms = j.at("terms").get<int>();
  return c;
}

CommandResult run_command(const std::string& command, const Json& input, const JobConfig& cfg) {
  cfg.validate();
  if (!input.is_object()) throw InputError("input: expected an object");
  if (command == "spectrum") return spectrum(input, cfg);
  if (command == "stability") return stability(input, cfg);
  if (command == "stabilize") return stabilize(input, cfg);
  if (command == "degrees") return degrees(input, cfg);
  if (command == "recurrence") return recurrence_cmd(input, cfg);
  throw InputError("unknown command \"" + command + "\"");
}

Json make_envelope(const std::string& command, const Json& input, const JobConfig& cfg, const CommandResult& res,
                   const double* timing_ms) {
  Json e{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"input", input},
         {"config", cfg.to_json()}, {"result", res.result}, {"provenance", res.provenance},
         {"exit_code", res.exit_code}};
  if (timing_ms) e["timing_ms"] = *timing_ms;
  return e;
}

Json error_envelope(const std::string& command, const Json& input, const JobConfig& cfg, const std::string& kind,
                    const std::string& message, int exit_code) {
  return Json{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"input", input},
              {"config", cfg.to_json()}, {"error", Json{{"kind", kind}, {"message", message}}},
              {"exit_code", exit_code}};
}

std::pair<int, std::string> classify_error(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return {kExitInputError, "input-error"};
  if (dynamic_cast<const InsufficientData*>(&e)) return {kExitInputError, "insufficient-data"};
  if (dynamic_cast<const SingularMatrix*>(&e)) return {kExitInputError, "singular-matrix"};
  if (dynamic_cast<const SingularBasis*>(&e)) return {kExitInputError, "singular-basis"};
  if (dynamic_cast<const DegeneratePolytope*>(&e)) return {kExitInputError, "degenerate-polytope"};
  if (dynamic_cast<const OutOfRange*>(&e)) return {kExitInputError, "out-of-range"};
  if (dynamic_cast<const SizeMismatch*>(&e)) return {kExitInputError, "size-mismatch"};
  if (dynamic_cast<const ZeroVector*>(&e)) return {kExitInputError, "zero-vector"};
  if (dynamic_cast<const PreconditionViolated*>(&e)) return {kExitPrecondition, "precondition-violated"};
  if (dynamic_cast<const SearchExhausted*>(&e)) return {kExitNotFound, "search-exhausted"};
  if (dynamic_cast<const DegenerateLift*>(&e)) return {kExitNotFound, "search-exhausted"};
  if (dynamic_cast<const PrecisionExhausted*>(&e)) return {kExitNotFound, "precision-exhausted"};
  if (dynamic_cast<const std::invalid_argument*>(&e)) return {kExitInputError, "input-error"};
  return {kExitInternal, "internal-error"};
}

std::string render_table(const Json& envelope) {
  std::ostringstream os;
  os << envelope.value("tool", "") << ' ' << envelope.value("version", "") << "  " << envelope.value("command", "")
     << '\n';
  if (envelope.contains("error")) {
    os << "error (" << envelope["error"]["kind"].get<std::string>() << "): "
       << envelope["error"]["message"].get<std::string>() << '\n';
  }
  if (envelope.contains("result")) render_section(os, "result", envelope["result"], 0);
  os << "seed: " << envelope["config"]["seed"].get<std::string>() << '\n';
  os << "exit code: " << envelope.value("exit_code", 0) << '\n';
  return os.str();
}

}  // namespace monodyn::cli
