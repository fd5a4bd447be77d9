#include "braidkit/workbench/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace braidkit::workbench {

using envelope::BracketKind;
using envelope::parse_poly;
using exact::Field;
using exact::Scalar;

namespace {

std::string literal(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw SpecError(where + ": scalar must be an integer or a string literal \"a/b\"");
}

json grid(const json& g, std::size_t rows, const std::string& where) {
  if (!g.is_array() || g.size() != rows) throw SpecError(where + ": expected " + std::to_string(rows) + " rows");
  json out = json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    if (!g[r].is_array() || g[r].size() != rows)
      throw SpecError(where + ": row " + std::to_string(r) + " must have " + std::to_string(rows) + " entries");
    json row = json::array();
    for (std::size_t c = 0; c < rows; ++c) row.push_back(literal(g[r][c], where));
    out.push_back(row);
  }
  return out;
}

std::size_t count(const json& doc, const char* key, std::size_t dflt, bool required = false) {
  if (!doc.contains(key)) {
    if (required) throw SpecError(std::string("missing field '") + key + "'");
    return dflt;
  }
  if (!doc[key].is_number_integer() || doc[key].get<long long>() < 0) throw SpecError(std::string("'") + key + "' must be a non-negative integer");
  return doc[key].get<std::size_t>();
}

const std::set<std::string> kTopKeys = {"name", "field", "dim", "labels", "braiding", "bracket",
                                        "truncation", "headroom", "budgets", "expect"};

}  // namespace

ProblemSpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw SpecError("spec must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!kTopKeys.count(it.key())) throw SpecError("unknown field '" + it.key() + "'");
  ProblemSpec s;
  s.name = doc.value("name", std::string("unnamed"));
  s.field = doc.contains("field") ? literal(doc["field"], "field") : "Q";
  Field::parse(s.field);
  s.dim = count(doc, "dim", 0, true);
  if (s.dim == 0) throw SpecError("dim must be positive");
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() || doc["labels"].size() != s.dim) throw SpecError("labels must list dim names");
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) throw SpecError("labels must be strings");
      s.labels.push_back(l.get<std::string>());
    }
  } else {
    for (std::size_t i = 1; i <= s.dim; ++i) s.labels.push_back("x" + std::to_string(i));
  }
  if (!doc.contains("braiding") || !doc["braiding"].is_object() || doc["braiding"].size() != 1)
    throw SpecError("braiding must be {\"diagonal\": ...} or {\"matrix\": ...}");
  const json& b = doc["braiding"];
  if (b.contains("diagonal"))
    s.braiding = {{"diagonal", grid(b["diagonal"], s.dim, "braiding.diagonal")}};
  else if (b.contains("matrix"))
    s.braiding = {{"matrix", grid(b["matrix"], s.dim * s.dim, "braiding.matrix")}};
  else
    throw SpecError("braiding must be {\"diagonal\": ...} or {\"matrix\": ...}");

  json br = doc.value("bracket", json{{"kind", "trivial"}});
  if (!br.is_object() || !br.contains("kind") || !br["kind"].is_string())
    throw SpecError("bracket.kind must be a string");
  json nb = {{"kind", br["kind"]}};
  for (auto it = br.begin(); it != br.end(); ++it) {
    const std::string& k = it.key();
    if (k == "kind") continue;
    if (k == "map") {
      json m = json::array();
      for (const auto& e : it.value()) {
        if (!e.is_object() || !e.contains("element") || !e.contains("value"))
          throw SpecError("bracket.map entries need element and value");
        m.push_back({{"element", literal(e["element"], "bracket.map")}, {"value", literal(e["value"], "bracket.map")}});
      }
      nb["map"] = m;
    } else if (k == "brackets") {
      json m = json::array();
      for (const auto& e : it.value()) {
        if (!e.is_object() || !e.contains("left") || !e.contains("right") || !e.contains("value"))
          throw SpecError("bracket.brackets entries need left, right and value");
        m.push_back({{"left", e["left"].get<std::string>()},
                     {"right", e["right"].get<std::string>()},
                     {"value", literal(e["value"], "bracket.brackets")}});
      }
      nb["brackets"] = m;
    } else if (k == "p_map") {
      if (!it.value().is_object()) throw SpecError("bracket.p_map must map labels to polynomials");
      json m = json::object();
      for (const auto& l : s.labels)
        if (it.value().contains(l)) m[l] = literal(it.value()[l], "bracket.p_map");
      if (m.size() != it.value().size()) throw SpecError("bracket.p_map uses an unknown label");
      nb["p_map"] = m;
    } else if (k == "rule") {
      nb["rule"] = it.value().get<std::string>();
    } else {
      throw SpecError("unknown bracket field '" + k + "'");
    }
  }
  s.bracket = nb;
  s.truncation = count(doc, "truncation", 0, true);
  s.headroom = count(doc, "headroom", 2);
  if (doc.contains("budgets")) {
    const json& bu = doc["budgets"];
    if (!bu.is_object()) throw SpecError("budgets must be an object");
    for (auto it = bu.begin(); it != bu.end(); ++it)
      if (it.key() != "factorial" && it.key() != "max_headroom" && it.key() != "coradical_margin" &&
          it.key() != "max_steps" && it.key() != "max_stages")
        throw SpecError("unknown budget '" + it.key() + "'");
    s.budgets.factorial = count(bu, "factorial", 7);
    s.budgets.max_headroom = count(bu, "max_headroom", 4);
    s.budgets.coradical_margin = count(bu, "coradical_margin", 1);
    if (bu.contains("max_steps")) s.budgets.max_steps = count(bu, "max_steps", 0);
    if (bu.contains("max_stages")) s.budgets.max_stages = count(bu, "max_stages", 0);
  }
  if (s.budgets.max_headroom < s.headroom) s.budgets.max_headroom = s.headroom;
  if (doc.contains("expect")) {
    if (!doc["expect"].is_object()) throw SpecError("expect must be an object keyed by subcommand");
    s.expect = doc["expect"];
  }
  return s;
}

json to_json(const ProblemSpec& s) {
  json budgets = {{"factorial", s.budgets.factorial},
                  {"max_headroom", s.budgets.max_headroom},
                  {"coradical_margin", s.budgets.coradical_margin}};
  if (s.budgets.max_steps) budgets["max_steps"] = *s.budgets.max_steps;
  if (s.budgets.max_stages) budgets["max_stages"] = *s.budgets.max_stages;
  json out = {{"name", s.name},         {"field", s.field},     {"dim", s.dim},
              {"labels", s.labels},     {"braiding", s.braiding}, {"bracket", s.bracket},
              {"truncation", s.truncation}, {"headroom", s.headroom}, {"budgets", budgets}};
  if (!s.expect.empty()) out["expect"] = s.expect;
  return out;
}

exact::Matrix braiding_matrix(const ProblemSpec& s, const Field& f) {
  std::size_t d = s.dim, D = d * d;
  exact::Matrix m(f, D, D);
  if (s.braiding.contains("diagonal")) {
    const json& q = s.braiding["diagonal"];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m.set(j * d + i, i * d + j, Scalar::parse(f, q[i][j].get<std::string>()));
  } else {
    const json& g = s.braiding["matrix"];
    for (std::size_t r = 0; r < D; ++r)
      for (std::size_t c = 0; c < D; ++c) {
        Scalar v = Scalar::parse(f, g[r][c].get<std::string>());
        if (!v.is_zero()) m.set(r, c, v);
      }
  }
  return m;
}

Problem materialize(const ProblemSpec& s) {
  Field f = Field::parse(s.field);
  auto space = std::make_shared<const braided::BraidedSpace>(f, s.dim, braiding_matrix(s, f), s.labels);
  envelope::BracketSpec b;
  b.kind = envelope::bracket_kind_from_string(s.bracket["kind"].get<std::string>());
  if (s.bracket["kind"] == "envelope_of_primitives") b.rule = "envelope_of_primitives";
  auto letter = [&](const std::string& l) {
    for (std::size_t i = 0; i < s.labels.size(); ++i)
      if (s.labels[i] == l) return static_cast<int>(i);
    throw SpecError("unknown label '" + l + "'");
  };
  if (s.bracket.contains("map"))
    for (const auto& e : s.bracket["map"])
      b.pairs.push_back({parse_poly(e["element"].get<std::string>(), s.labels, f),
                         parse_poly(e["value"].get<std::string>(), s.labels, f)});
  if (s.bracket.contains("brackets"))
    for (const auto& e : s.bracket["brackets"])
      b.brackets.push_back({letter(e["left"].get<std::string>()), letter(e["right"].get<std::string>()),
                            parse_poly(e["value"].get<std::string>(), s.labels, f)});
  if (s.bracket.contains("p_map")) {
    for (const auto& l : s.labels)
      b.p_map.push_back(s.bracket["p_map"].contains(l) ? parse_poly(s.bracket["p_map"][l].get<std::string>(), s.labels, f)
                                                       : envelope::Poly(f));
  }
  if (s.bracket.contains("rule")) b.rule = s.bracket["rule"].get<std::string>();
  if (b.kind == BracketKind::custom_tower && b.rule != "envelope_of_primitives")
    throw SpecError("custom_tower supports the built-in rule 'envelope_of_primitives' only");
  return {s, f, std::move(space), std::move(b)};
}

ProblemSpec load_spec(const std::string& where) {
  if (where.rfind("builtin:", 0) == 0) return builtin(where.substr(8));
  std::ifstream in(where);
  if (!in) throw SpecError("cannot open spec file '" + where + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
  return parse_spec(doc);
}

}  // namespace braidkit::workbench
