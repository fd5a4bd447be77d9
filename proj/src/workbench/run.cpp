#include "braidkit/workbench/run.hpp"

#include <chrono>
#include <sstream>

#include "braidkit/envelope/envelope_tower.hpp"

namespace braidkit::workbench {

using namespace braidkit::envelope;

namespace {

struct Failure : std::runtime_error {
  Failure(const std::string& what, json d) : std::runtime_error(what), detail(std::move(d)) {}
  json detail;
};

json witness(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"level", w->level}, {"element", w->element}};
}

std::size_t steps(const Problem& p) { return p.spec.budgets.max_steps.value_or(p.spec.truncation); }

FilteredOptions filtered_options(const Problem& p, kernels::Exec exec) {
  FilteredOptions o;
  o.headroom = p.spec.headroom;
  o.max_headroom = p.spec.budgets.max_headroom;
  o.exec = exec;
  return o;
}

AnalysisOptions analysis_options(const Problem& p) {
  AnalysisOptions o;
  o.coradical_margin = p.spec.budgets.coradical_margin;
  o.factorial_budget = p.spec.budgets.factorial;
  o.max_steps = steps(p);
  return o;
}

bool fixture(const Problem& p) { return p.bracket.kind == BracketKind::custom_tower; }

struct Envelope {
  RelationSet rels;
  FilteredPresentation fp;
};

Envelope build_envelope(const Problem& p, kernels::Exec exec) {
  Envelope e;
  std::size_t N = p.spec.truncation;
  if (fixture(p)) {
    e.fp = filtered_ideal(p.space, {}, N, filtered_options(p, exec));
    e.fp.generators = Generators::primitives;
    e.rels.notes.push_back("generated by the primitives of the tensor algebra; b = Id");
    return e;
  }
  e.rels = relations_from_bracket(p.space, p.bracket, N);
  e.fp = filtered_ideal(p.space, e.rels.relations, N, filtered_options(p, exec));
  return e;
}

json dims(const std::vector<std::size_t>& v) { return json(v); }

json graded(const FilteredPresentation& fp) {
  auto f = fp.filtration_dims();
  json a = json::array();
  for (std::size_t n = 0; n < f.size(); ++n) a.push_back(n ? f[n] - f[n - 1] : f[0]);
  return a;
}

json cmd_qybe(const ProblemSpec& s) {
  exact::Field f = exact::Field::parse(s.field);
  exact::Matrix m = braiding_matrix(s, f);
  if (auto w = braided::qybe_violation(m, s.dim))
    throw Failure("braiding violates the braid relation c1 c2 c1 = c2 c1 c2 on (" + s.labels[w->i] + ", " +
                      s.labels[w->j] + ", " + s.labels[w->k] + ")",
                  {{"witness", {s.labels[w->i], s.labels[w->j], s.labels[w->k]}}});
  Problem p = materialize(s);  // invertibility
  return {{"qybe", true}, {"invertible", true}, {"diagonal", p.space->is_diagonal()}, {"dim", s.dim}};
}

json cmd_nichols(const Problem& p) {
  // symmetrizer first: it enforces the factorial budget before the tower runs
  auto s = tower::nichols_dims_symmetrizer(*p.space, p.spec.truncation, p.spec.budgets.factorial);
  auto t = tower::nichols_dims_tower(p.space, p.spec.truncation, steps(p));
  return {{"tower_dims", dims(t)}, {"symmetrizer_dims", dims(s)}, {"agree", t == s}};
}

json cmd_rank(const Problem& p) {
  tower::RankResult r = tower::combinatorial_rank(p.space, p.spec.truncation, steps(p));
  json stages = json::array();
  for (std::size_t k = 0; k < r.stages.size(); ++k) {
    json st = {{"stage", k}, {"dims", dims(r.stages[k].quotient_dims())}};
    if (k < r.new_primitives.size()) st["new_primitives"] = dims(r.new_primitives[k]);
    stages.push_back(st);
  }
  json out = {{"rank", r.rank ? json(*r.rank) : json(nullptr)},
              {"certified", r.rank.has_value()},
              {"certified_degree", r.truncation},
              {"max_steps", r.max_steps},
              {"stages", stages}};
  return out;
}

json cmd_primitives(const Problem& p, kernels::Exec exec) {
  Analysis a(build_envelope(p, exec).fp, analysis_options(p));
  const GeneratorSpace& g = a.primitive_space();
  json basis = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    basis.push_back({{"degree", g.degrees[i]}, {"element", a.quotient().to_string(g.basis[i])}});
  return {{"dim", g.dim()}, {"basis", basis}};
}

EnvelopeRule rule_for(const Problem& p, const Envelope& e, kernels::Exec exec) {
  switch (p.bracket.kind) {
    case BracketKind::trivial: return trivial_rule();
    case BracketKind::custom_tower: return primitives_identity_rule();
    default: return relation_rule(p.space, e.rels.relations, p.spec.truncation, filtered_options(p, exec));
  }
}

json cmd_envelope(const Problem& p, kernels::Exec exec) {
  Envelope e = build_envelope(p, exec);
  const auto& labels = p.space->labels();
  json rels = json::array();
  for (const auto& r : e.rels.relations) rels.push_back(r.to_string(labels));
  TruncatedQuotient q(e.fp);
  BialgebraCheck bc = q.check_bialgebra();
  std::size_t N = p.spec.truncation, H = p.spec.headroom;
  bool identical = filtered_ideal_at(*p.space, e.fp.relations, N, H, exec) ==
                   filtered_ideal_at(*p.space, e.fp.relations, N, H + 1, exec);
  EnvelopeTower t = tower_envelope(p.space, rule_for(p, e, exec), N, filtered_options(p, exec),
                                   p.spec.budgets.max_stages.value_or(N));
  json stages = json::array();
  for (const auto& s : t.stages)
    stages.push_back({{"stage", s.stage},
                      {"filtration_dims", dims(s.filtration_dims)},
                      {"primitive_dim", s.primitive_dim},
                      {"v_dim", s.v_dim},
                      {"i_injective", s.i_injective},
                      {"section", s.section_ok},
                      {"bracket_compatible", s.bracket_ok},
                      {"p_splits", s.split_ok},
                      {"kernel_matches", s.kernel_ok},
                      {"new_relations", s.new_relations},
                      {"notes", s.notes}});
  bool same = t.stabilized_at && t.result().ideal == e.fp.ideal;
  return {{"bracket", to_string(p.bracket.kind)},
          {"relations", rels},
          {"notes", e.rels.notes},
          {"homogeneous", e.fp.homogeneous},
          {"generators", e.fp.generators == Generators::primitives ? "primitives" : "degree_one"},
          {"headroom", {{"requested", H}, {"used", e.fp.headroom_used}, {"identical", identical}}},
          {"filtration_dims", dims(e.fp.filtration_dims())},
          {"graded_dims", graded(e.fp)},
          {"total_dim", e.fp.filtration_dims().back()},
          {"i_injective", q.degree_one_injective()},
          {"bialgebra", {{"coideal", bc.coideal_ok}, {"braided", bc.braided_ok}, {"witness", bc.witness}}},
          {"tower",
           {{"rule", t.rule},
            {"stabilized_at", t.stabilized_at ? json(*t.stabilized_at) : json(nullptr)},
            {"ok", t.ok() && same},
            {"matches_direct", same},
            {"stages", stages}}}};
}

json pbw_json(const PBWReport& r) {
  return {{"pbw_type", r.pbw_type},
          {"theta", {{"holds", r.theta.holds}, {"witness", witness(r.theta.witness)}}},
          {"graded_dims", dims(r.graded_dims)},
          {"nichols_dims", dims(r.nichols_dims)},
          {"first_mismatch", r.first_mismatch ? json(*r.first_mismatch) : json(nullptr)}};
}

json cmd_pbw(const Problem& p, kernels::Exec exec) {
  Analysis a(build_envelope(p, exec).fp, analysis_options(p));
  return pbw_json(a.pbw_check());
}

json cmd_pbw_basis(const Problem& p, kernels::Exec exec) {
  Analysis a(build_envelope(p, exec).fp, analysis_options(p));
  json degrees = json::array();
  auto words = a.pbw_basis();
  for (std::size_t n = 0; n < words.size(); ++n) {
    json ws = json::array();
    for (const auto& w : words[n]) ws.push_back(power_word(w, p.space->labels()));
    degrees.push_back({{"degree", n}, {"count", ws.size()}, {"words", ws}});
  }
  return {{"degrees", degrees}};
}

json cmd_corad(const Problem& p, kernels::Exec exec) {
  Analysis a(build_envelope(p, exec).fp, analysis_options(p));
  const CoradicalData& c = a.coradical();
  std::vector<std::size_t> levels, gr;
  for (std::size_t m = 0; m <= c.validity; ++m) {
    levels.push_back(c.levels[m].dim());
    gr.push_back(c.gr_dims[m]);
  }
  return {{"validity", c.validity},
          {"margin", p.spec.budgets.coradical_margin},
          {"level_dims", dims(levels)},
          {"gr_dims", dims(gr)},
          {"primitive_dim", c.primitives.dim()}};
}

json cmd_cosym(const Problem& p, kernels::Exec exec) {
  Analysis a(build_envelope(p, exec).fp, analysis_options(p));
  CosymReport c = a.cosymmetric_check();
  KhaCosymReport k = khacosym_consistency(p.space, p.spec.truncation, steps(p));
  json stages = json::array();
  json first = nullptr;
  for (const auto& s : k.stages) {
    stages.push_back({{"stage", s.stage}, {"cosymmetric", s.cosymmetric}, {"witness", witness(s.witness)}});
    if (s.cosymmetric && first.is_null()) first = s.stage;
  }
  return {{"cosymmetric", c.cosymmetric},
          {"witness", witness(c.witness)},
          {"validity", c.validity},
          {"khacosym",
           {{"rank", k.rank ? json(*k.rank) : json(nullptr)},
            {"consistent", k.consistent},
            {"first_cosymmetric_stage", first},
            {"diagnostic", k.diagnostic},
            {"stages", stages}}}};
}

json crosscheck_json(const CrossCheck& c) {
  return {{"pbw_type", c.pbw.pbw_type},
          {"strictly_generated", c.strict.strictly_generated},
          {"cosymmetric", c.cosym.cosymmetric},
          {"lifting", c.lifting.lifting},
          {"consistent", c.consistent},
          {"details",
           {{"pbw", pbw_json(c.pbw)},
            {"strict",
             {{"condition_form", c.strict.condition_form},
              {"standard_dims", dims(c.strict.standard_dims)},
              {"coradical_dims", dims(c.strict.coradical_dims)},
              {"witness", witness(c.strict.witness)}}},
            {"cosym", {{"witness", witness(c.cosym.witness)}}},
            {"lifting",
             {{"gr_dims", dims(c.lifting.gr_dims)},
              {"nichols_dims", dims(c.lifting.nichols_dims)},
              {"linearization_injective", c.lifting.linearization_injective}}},
            {"validity", c.strict.validity}}}};
}

json cmd_crosscheck(const Problem& p, kernels::Exec exec) {
  Analysis a(build_envelope(p, exec).fp, analysis_options(p));
  try {
    return crosscheck_json(a.teopbw_crosscheck());
  } catch (const InconsistencyError& e) {
    throw Failure(e.what(), crosscheck_json(e.check));
  }
}

std::string hint_for(const std::exception& e) {
  if (dynamic_cast<const HeadroomError*>(&e)) return "raise budgets.max_headroom or lower --degree";
  if (dynamic_cast<const braided::BudgetExceeded*>(&e)) return "raise budgets.factorial or lower --degree";
  if (dynamic_cast<const tower::StabilizationError*>(&e)) return "raise budgets.max_steps or lower --degree";
  if (dynamic_cast<const braided::BraidingError*>(&e) || dynamic_cast<const Failure*>(&e))
    return "c must satisfy c1 c2 c1 = c2 c1 c2 on V⊗V⊗V and be invertible";
  if (dynamic_cast<const BracketError*>(&e)) return "check the bracket datum against its axioms";
  if (dynamic_cast<const SpecError*>(&e) || dynamic_cast<const json::exception*>(&e))
    return "see docs/schema.md";
  return "";
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const HeadroomError*>(&e)) return "headroom";
  if (dynamic_cast<const braided::BudgetExceeded*>(&e)) return "budget";
  if (dynamic_cast<const tower::StabilizationError*>(&e)) return "stabilization";
  if (dynamic_cast<const braided::BraidingError*>(&e) || dynamic_cast<const Failure*>(&e)) return "braiding";
  if (dynamic_cast<const BracketError*>(&e)) return "bracket";
  if (dynamic_cast<const SpecError*>(&e) || dynamic_cast<const json::exception*>(&e)) return "spec";
  if (dynamic_cast<const InconsistencyError*>(&e)) return "inconsistency";
  if (dynamic_cast<const exact::FieldMismatch*>(&e)) return "field";
  return "error";
}

json dispatch(const std::string& sub, const ProblemSpec& s, kernels::Exec exec) {
  if (sub == "qybe") return cmd_qybe(s);
  Problem p = materialize(s);
  if (sub == "nichols") return cmd_nichols(p);
  if (sub == "rank") return cmd_rank(p);
  if (sub == "primitives") return cmd_primitives(p, exec);
  if (sub == "envelope") return cmd_envelope(p, exec);
  if (sub == "pbw") return cmd_pbw(p, exec);
  if (sub == "pbw-basis") return cmd_pbw_basis(p, exec);
  if (sub == "corad") return cmd_corad(p, exec);
  if (sub == "cosym") return cmd_cosym(p, exec);
  if (sub == "crosscheck") return cmd_crosscheck(p, exec);
  throw SpecError("unknown subcommand '" + sub + "'");
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"qybe", "nichols", "rank",  "primitives", "envelope", "pbw",
                                             "pbw-basis", "corad", "cosym", "crosscheck", "corpus"};
  return s;
}

std::string power_word(const std::vector<int>& w, const std::vector<std::string>& labels) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += " ";
    out += labels[w[i]];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::vector<std::string> mismatches(const json& expected, const json& actual, const std::string& path) {
  std::vector<std::string> out;
  auto here = path.empty() ? std::string("result") : path;
  if (expected.is_object()) {
    if (!actual.is_object()) return {here + ": expected an object"};
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      if (!actual.contains(it.key())) {
        out.push_back(here + "." + it.key() + ": missing");
        continue;
      }
      auto sub = mismatches(it.value(), actual[it.key()], here + "." + it.key());
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  if (expected.is_array() && actual.is_array()) {
    if (expected.size() != actual.size())
      return {here + ": expected " + expected.dump() + ", got " + actual.dump()};
    for (std::size_t i = 0; i < expected.size(); ++i) {
      auto sub = mismatches(expected[i], actual[i], here + "[" + std::to_string(i) + "]");
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  if (expected != actual) out.push_back(here + ": expected " + expected.dump() + ", got " + actual.dump());
  return out;
}

Outcome run(const std::string& sub, const ProblemSpec& spec, const RunOptions& opt) {
  Outcome o;
  o.report["command"] = sub;
  o.report["spec"] = to_json(spec);
  o.report["spec"].erase("expect");
  o.report["certification"] = {{"truncation", spec.truncation},
                               {"headroom", spec.headroom},
                               {"max_headroom", spec.budgets.max_headroom},
                               {"coradical_margin", spec.budgets.coradical_margin},
                               {"coradical_validity",
                                spec.truncation > spec.budgets.coradical_margin ? spec.truncation - spec.budgets.coradical_margin : 0},
                               {"factorial_budget", spec.budgets.factorial},
                               {"max_steps", spec.budgets.max_steps.value_or(spec.truncation)}};
  auto t0 = std::chrono::steady_clock::now();
  try {
    o.report["result"] = dispatch(sub, spec, opt.exec);
  } catch (const Failure& e) {
    o.report["error"] = {{"type", error_type(e)}, {"message", e.what()}, {"hint", hint_for(e)}};
    o.report["error"]["detail"] = e.detail;
    o.exit_code = 2;
  } catch (const std::exception& e) {
    o.report["error"] = {{"type", error_type(e)}, {"message", e.what()}, {"hint", hint_for(e)}};
    o.exit_code = 2;
  }
  if (o.exit_code == 0) {
    std::optional<json> exp = opt.expect;
    if (!exp && opt.use_embedded && spec.expect.contains(sub)) exp = spec.expect[sub];
    if (exp) {
      auto mm = mismatches(*exp, o.report["result"]);
      o.report["expectations"] = {{"ok", mm.empty()}, {"mismatches", mm}};
      if (!mm.empty()) o.exit_code = 1;
    }
  }
  if (opt.timing)
    o.report["timing"] = {
        {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
        {"threads", kernels::thread_count()}};
  return o;
}

Outcome run_corpus(const RunOptions& opt) {
  Outcome o;
  o.report["command"] = "corpus";
  json entries = json::array();
  bool all = true;
  for (const auto& name : builtin_names()) {
    ProblemSpec s = builtin(name);
    json checks = json::array();
    bool ok = true;
    for (auto it = s.expect.begin(); it != s.expect.end(); ++it) {
      RunOptions ro;
      ro.exec = opt.exec;
      ro.expect = it.value();
      Outcome r = run(it.key(), s, ro);
      json c = {{"command", it.key()}, {"ok", r.exit_code == 0}};
      if (r.report.contains("error")) c["error"] = r.report["error"]["message"];
      if (r.report.contains("expectations")) c["mismatches"] = r.report["expectations"]["mismatches"];
      ok = ok && r.exit_code == 0;
      checks.push_back(c);
    }
    all = all && ok;
    entries.push_back({{"name", name}, {"ok", ok}, {"checks", checks}});
  }
  o.report["entries"] = entries;
  o.report["ok"] = all;
  o.exit_code = all ? 0 : 1;
  return o;
}

namespace {

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  bool leaf_array = j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array() && !leaf_array) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

}  // namespace

std::string render_table(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(w - k.size() + 2, ' ') << v << "\n";
  return os.str();
}

}  // namespace braidkit::workbench
