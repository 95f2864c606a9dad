#include "fracspec/spec_io.hpp"

#include <fstream>
#include <sstream>

namespace fracspec {

namespace {

using nlohmann::json;

Rational field_rational(const json& value, const std::string& where) {
  if (!value.is_string()) throw ParseError(where + ": expected a rational string like \"p/q\"");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

RatVec field_vector(const json& value, std::size_t d, const std::string& where) {
  if (!value.is_array() || value.size() != d)
    throw ParseError(where + ": expected an array of " + std::to_string(d) + " rationals");
  RatVec v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = field_rational(value[i], where + "[" + std::to_string(i) + "]");
  return v;
}

RatMat field_matrix(const json& doc, const std::string& key, std::size_t d) {
  if (!doc.contains(key)) throw ParseError("missing field \"" + key + "\"");
  const json& rows = doc.at(key);
  if (!rows.is_array() || rows.size() != d) throw ParseError(key + ": expected " + std::to_string(d) + " rows");
  RatMat m(d);
  for (std::size_t i = 0; i < d; ++i) {
    const RatVec row = field_vector(rows[i], d, key + "[" + std::to_string(i) + "]");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = row[j];
  }
  if (m.determinant() == 0) throw ParseError(key + ": singular basis");
  return m;
}

std::vector<RatVec> field_vectors(const json& doc, const std::string& key, std::size_t d) {
  if (!doc.contains(key)) throw ParseError("missing field \"" + key + "\"");
  const json& list = doc.at(key);
  if (!list.is_array() || list.empty()) throw ParseError(key + ": expected a non-empty array");
  std::vector<RatVec> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(field_vector(list[i], d, key + "[" + std::to_string(i) + "]"));
  return out;
}

std::optional<BoxUnion> field_boxes(const json& doc, const std::string& key, std::size_t d) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  const json& list = doc.at(key);
  if (!list.is_array() || list.empty()) throw ParseError(key + ": expected a non-empty array of boxes");
  std::vector<Box> boxes;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = key + "[" + std::to_string(i) + "]";
    if (!list[i].is_array() || list[i].size() != 2) throw ParseError(where + ": expected [low, high]");
    boxes.push_back(Box{field_vector(list[i][0], d, where + "[0]"), field_vector(list[i][1], d, where + "[1]")});
  }
  try {
    return BoxUnion(std::move(boxes));
  } catch (const std::invalid_argument& e) {
    throw ParseError(key + ": " + e.what());
  }
}

json vector_json(const RatVec& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(format_rational(r));
  return out;
}

json matrix_json(const RatMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json boxes_json(const BoxUnion& u) {
  json out = json::array();
  for (const auto& b : u.boxes()) out.push_back(json::array({vector_json(b.lo), vector_json(b.hi)}));
  return out;
}

Box interval(const Rational& lo, const Rational& hi) { return Box{RatVec{lo}, RatVec{hi}}; }

SpecDocument scale4_document() {
  SpecDocument doc;
  doc.name = "scale4";
  doc.dimension = 1;
  doc.K_basis = RatMat(1, {Rational(1)});
  doc.A_basis = RatMat(1, {Rational(1, 2)});
  doc.Gamma_basis = RatMat(1, {Rational(1, 4)});
  doc.digits_B = {RatVec{Rational(0)}, RatVec{Rational(1, 2)}};
  doc.digits_L = {RatVec{Rational(0)}, RatVec{Rational(1)}};
  doc.omega = BoxUnion({interval(0, Rational(1, 4)), interval(Rational(1, 2), Rational(3, 4))});
  doc.d_prime = BoxUnion({interval(0, Rational(1, 4))});
  return doc;
}

SpecDocument scale4x2_document() {
  SpecDocument doc;
  doc.name = "scale4x2";
  doc.dimension = 2;
  doc.K_basis = RatMat::identity(2);
  doc.A_basis = RatMat::diagonal({Rational(1, 2), Rational(1, 2)});
  doc.Gamma_basis = RatMat::diagonal({Rational(1, 4), Rational(1, 4)});
  const Rational h(1, 2);
  doc.digits_B = {{0, 0}, {h, 0}, {0, h}, {h, h}};
  doc.digits_L = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  std::vector<Box> omega;
  for (const Rational& x : {Rational(0), h})
    for (const Rational& y : {Rational(0), h})
      omega.push_back(Box{{x, y}, {x + Rational(1, 4), y + Rational(1, 4)}});
  doc.omega = BoxUnion(std::move(omega));
  doc.d_prime = BoxUnion({Box{{0, 0}, {Rational(1, 4), Rational(1, 4)}}});
  return doc;
}

SpecDocument degenerate_document() {
  SpecDocument doc;
  doc.name = "degenerate";
  doc.dimension = 1;
  doc.K_basis = RatMat(1, {Rational(1)});
  doc.A_basis = RatMat(1, {Rational(1)});
  doc.Gamma_basis = RatMat(1, {Rational(1, 4)});
  doc.digits_B = {RatVec{Rational(0)}};
  doc.digits_L = {RatVec{Rational(0)}};
  return doc;
}

}  // namespace

ValidationFailed::ValidationFailed(const std::string& spec_name, ValidationReport report)
    : Error("ValidationFailed: spec \"" + spec_name + "\" fails validation"), report_(std::move(report)) {}

SimpleFactorSpec SpecDocument::to_spec() const {
  return SimpleFactorSpec(name, Lattice(K_basis), Lattice(A_basis), Lattice(Gamma_basis), digits_B, digits_L);
}

SpecDocument parse_spec_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("spec document must be a JSON object");
  SpecDocument out;
  out.name = doc.value("name", std::string("unnamed"));
  if (!doc.contains("dimension") || !doc.at("dimension").is_number_unsigned() || doc.at("dimension").get<int>() < 1)
    throw ParseError("dimension: expected a positive integer");
  out.dimension = doc.at("dimension").get<std::size_t>();
  const std::size_t d = out.dimension;
  out.K_basis = field_matrix(doc, "K_basis", d);
  out.A_basis = field_matrix(doc, "A_basis", d);
  out.Gamma_basis = field_matrix(doc, "Gamma_basis", d);
  out.digits_B = field_vectors(doc, "digits_B", d);
  out.digits_L = field_vectors(doc, "digits_L", d);
  out.omega = field_boxes(doc, "omega", d);
  out.d_prime = field_boxes(doc, "D_prime", d);
  return out;
}

SpecDocument parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_spec_json(doc);
}

json spec_to_json(const SpecDocument& doc) {
  json out;
  out["name"] = doc.name;
  out["dimension"] = doc.dimension;
  out["K_basis"] = matrix_json(doc.K_basis);
  out["A_basis"] = matrix_json(doc.A_basis);
  out["Gamma_basis"] = matrix_json(doc.Gamma_basis);
  out["digits_B"] = json::array();
  for (const auto& b : doc.digits_B) out["digits_B"].push_back(vector_json(b));
  out["digits_L"] = json::array();
  for (const auto& l : doc.digits_L) out["digits_L"].push_back(vector_json(l));
  if (doc.omega) out["omega"] = boxes_json(*doc.omega);
  if (doc.d_prime) out["D_prime"] = boxes_json(*doc.d_prime);
  return out;
}

SpecDocument middle_third_document(const Rational& ell) {
  SpecDocument doc;
  doc.name = "middlethird";
  doc.dimension = 1;
  doc.K_basis = RatMat(1, {Rational(1)});
  doc.A_basis = RatMat(1, {Rational(1, 3)});
  doc.Gamma_basis = RatMat(1, {Rational(1, 3)});
  doc.digits_B = {RatVec{Rational(0)}, RatVec{Rational(2, 3)}};
  doc.digits_L = {RatVec{Rational(0)}, RatVec{ell}};
  return doc;
}

std::vector<std::string> builtin_spec_names() { return {"scale4", "scale4x2", "middlethird", "degenerate"}; }

std::optional<SpecDocument> builtin_spec(const std::string& name) {
  if (name == "scale4") return scale4_document();
  if (name == "scale4x2") return scale4x2_document();
  if (name == "middlethird") return middle_third_document(1);
  if (name == "degenerate") return degenerate_document();
  return std::nullopt;
}

SpecDocument load_spec_document(const std::string& path_or_name) {
  if (auto builtin = builtin_spec(path_or_name)) return *builtin;
  std::ifstream in(path_or_name);
  if (!in) throw IOError("cannot read spec file \"" + path_or_name + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str());
}

LoadedSpec parse_spec(const std::string& path_or_name, bool require_valid) {
  SpecDocument doc = load_spec_document(path_or_name);
  SimpleFactorSpec spec = doc.to_spec();
  ValidationReport report = validate_simple_factor(spec);
  if (require_valid && !report.ok()) throw ValidationFailed(doc.name, report);
  return LoadedSpec{std::move(doc), std::move(spec), std::move(report)};
}

json report_to_json(const ValidationReport& report) {
  json out;
  out["ok"] = report.ok();
  out["degenerate"] = report.degenerate;
  out["hadamard_residual"] = std::isfinite(report.hadamard_residual) ? json(report.hadamard_residual) : json(nullptr);
  out["checks"] = json::array();
  for (const auto& c : report.checks) out["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

RatVec parse_rational_vector(const std::string& text) {
  RatVec v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(parse_rational(item));
  if (v.empty()) throw ParseError("empty vector \"" + text + "\"");
  return v;
}

}  // namespace fracspec
