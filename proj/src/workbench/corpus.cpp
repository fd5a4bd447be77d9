#include <functional>

#include "braidkit/workbench/problem.hpp"
#include "braidkit/workbench/run.hpp"

namespace braidkit::workbench {

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

json seq(std::size_t N, const std::function<std::size_t(std::size_t)>& f) {
  json a = json::array();
  for (std::size_t n = 0; n <= N; ++n) a.push_back(f(n));
  return a;
}

json fixed(std::vector<std::size_t> v) { return json(v); }

// Ordered monomials l_1^{a_1} ... l_d^{a_d} of degree n with a_i <= bound, lex ascending as words.
json ordered_monomials(const std::vector<std::string>& labels, std::size_t N, std::size_t bound) {
  json degrees = json::array();
  for (std::size_t n = 0; n <= N; ++n) {
    std::vector<std::size_t> ex(labels.size());
    json words = json::array();
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
      if (i + 1 == labels.size()) {
        if (left > bound) return;
        ex[i] = left;
        std::vector<int> w;
        for (std::size_t k = 0; k < labels.size(); ++k) w.insert(w.end(), ex[k], static_cast<int>(k));
        words.push_back(power_word(w, labels));
        return;
      }
      for (std::size_t a = std::min(left, bound) + 1; a-- > 0;) {
        ex[i] = a;
        rec(i + 1, left - a);
      }
    };
    rec(0, n);
    degrees.push_back({{"degree", n}, {"count", words.size()}, {"words", words}});
  }
  return {{"degrees", degrees}};
}

json criteria(bool v) {
  return {{"pbw_type", v}, {"strictly_generated", v}, {"cosymmetric", v}, {"lifting", v}, {"consistent", true}};
}

json diag_q(std::vector<std::vector<std::string>> q) { return {{"diagonal", q}}; }

json flip_braiding(std::size_t d) {
  json rows = json::array();
  for (std::size_t i = 0; i < d; ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < d; ++j) r.push_back("1");
    rows.push_back(r);
  }
  return {{"diagonal", rows}};
}

ProblemSpec make(const std::string& name) {
  const auto unb = static_cast<std::size_t>(-1);
  json doc;
  json ex = json::object();
  if (name == "flip-d2-char0" || name == "flip-d3-char0") {
    std::size_t d = name == "flip-d2-char0" ? 2 : 3, N = d == 2 ? 6 : 5;
    doc = {{"name", name}, {"field", "Q"}, {"dim", d}, {"braiding", flip_braiding(d)},
           {"bracket", {{"kind", "trivial"}}}, {"truncation", N}};
    auto sym = seq(N, [d](std::size_t n) { return binom(n + d - 1, d - 1); });
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= d; ++i) labels.push_back("x" + std::to_string(i));
    ex = {{"qybe", {{"qybe", true}, {"invertible", true}}},
          {"nichols", {{"tower_dims", sym}, {"symmetrizer_dims", sym}, {"agree", true}}},
          {"rank", {{"rank", 1}, {"certified", true}}},
          {"envelope", {{"graded_dims", sym}, {"headroom", {{"identical", true}}}, {"tower", {{"ok", true}}}}},
          {"pbw", {{"pbw_type", true}, {"graded_dims", sym}}},
          {"pbw-basis", ordered_monomials(labels, N, unb)},
          {"cosym", {{"cosymmetric", true}, {"khacosym", {{"consistent", true}, {"rank", 1}}}}},
          {"crosscheck", criteria(true)}};
  } else if (name == "sl2") {
    doc = {{"name", name},
           {"field", "Q"},
           {"dim", 3},
           {"labels", {"e", "h", "f"}},
           {"braiding", flip_braiding(3)},
           {"bracket",
            {{"kind", "lie_flip"},
             {"brackets",
              {{{"left", "e"}, {"right", "h"}, {"value", "-2 e"}},
               {{"left", "e"}, {"right", "f"}, {"value", "h"}},
               {{"left", "h"}, {"right", "f"}, {"value", "-2 f"}}}}}},
           {"truncation", 5}};
    auto c = seq(5, [](std::size_t n) { return binom(n + 2, 2); });
    ex = {{"nichols", {{"tower_dims", c}, {"symmetrizer_dims", c}, {"agree", true}}},
          {"envelope", {{"graded_dims", c}, {"headroom", {{"identical", true}}}, {"tower", {{"ok", true}, {"stabilized_at", 1}}}}},
          {"pbw", {{"pbw_type", true}, {"graded_dims", c}}},
          {"pbw-basis", ordered_monomials({"e", "h", "f"}, 5, unb)},
          {"crosscheck", criteria(true)}};
  } else if (name == "restricted-gf2-abelian") {
    doc = {{"name", name}, {"field", "GF(2)"}, {"dim", 2}, {"braiding", flip_braiding(2)},
           {"bracket", {{"kind", "restricted_flip"}}}, {"truncation", 6}};
    auto g = fixed({1, 2, 1, 0, 0, 0, 0});
    ex = {{"nichols", {{"tower_dims", g}, {"symmetrizer_dims", g}, {"agree", true}}},
          {"envelope", {{"graded_dims", g}, {"total_dim", 4}, {"headroom", {{"identical", true}}}, {"tower", {{"ok", true}}}}},
          {"pbw", {{"pbw_type", true}, {"graded_dims", g}}},
          {"pbw-basis", ordered_monomials({"x1", "x2"}, 6, 1)},
          {"crosscheck", criteria(true)}};
  } else if (name == "restricted-gf3") {
    doc = {{"name", name},
           {"field", "GF(3)"},
           {"dim", 2},
           {"braiding", flip_braiding(2)},
           {"bracket",
            {{"kind", "restricted_flip"},
             {"brackets", {{{"left", "x1"}, {"right", "x2"}, {"value", "x2"}}}},
             {"p_map", {{"x1", "x1"}}}}},
           {"truncation", 6}};
    auto g = fixed({1, 2, 3, 2, 1, 0, 0});
    ex = {{"nichols", {{"tower_dims", g}, {"symmetrizer_dims", g}, {"agree", true}}},
          {"envelope", {{"graded_dims", g}, {"total_dim", 9}, {"headroom", {{"identical", true}}}, {"tower", {{"ok", true}}}}},
          {"pbw", {{"pbw_type", true}, {"graded_dims", g}}},
          {"pbw-basis", ordered_monomials({"x1", "x2"}, 6, 2)},
          {"crosscheck", criteria(true)}};
  } else if (name == "stumbo") {
    doc = {{"name", name},
           {"field", "Q"},
           {"dim", 2},
           {"braiding", diag_q({{"2", "1"}, {"1", "1"}})},
           {"bracket", {{"kind", "rank1_map"}, {"map", {{{"element", "x2 x1 - x1 x2"}, {"value", "x1"}}}}}},
           {"truncation", 6}};
    auto g = seq(6, [](std::size_t n) { return n + 1; });
    ex = {{"nichols", {{"tower_dims", g}, {"symmetrizer_dims", g}, {"agree", true}}},
          {"rank", {{"rank", 1}, {"certified", true}}},
          {"envelope", {{"graded_dims", g}, {"headroom", {{"identical", true}}}, {"tower", {{"ok", true}, {"stabilized_at", 1}}}}},
          {"pbw", {{"pbw_type", true}, {"graded_dims", g}}},
          {"pbw-basis", ordered_monomials({"x1", "x2"}, 6, unb)},
          {"crosscheck", criteria(true)}};
  } else if (name == "kharchenko" || name == "kharchenko-envelope-fixture") {
    bool fixture = name != "kharchenko";
    doc = {{"name", name},
           {"field", "Q"},
           {"dim", 2},
           {"braiding", diag_q({{"-1", "1"}, {"-1", "-1"}})},
           {"bracket", fixture ? json{{"kind", "custom_tower"}, {"rule", "envelope_of_primitives"}} : json{{"kind", "trivial"}}},
           {"truncation", 6}};
    auto g = fixed({1, 2, 2, 2, 1, 0, 0});
    ex = {{"nichols", {{"tower_dims", g}, {"symmetrizer_dims", g}, {"agree", true}}},
          {"rank", {{"rank", 2}, {"certified", true}}},
          {"cosym", {{"cosymmetric", !fixture}, {"khacosym", {{"consistent", true}, {"rank", 2}, {"first_cosymmetric_stage", 1}}}}},
          {"crosscheck", criteria(!fixture)}};
    if (fixture) {
      ex["envelope"] = {{"headroom", {{"identical", true}}}, {"tower", {{"ok", true}, {"stabilized_at", 0}}}};
    } else {
      ex["envelope"] = {{"graded_dims", g}, {"headroom", {{"identical", true}}}, {"tower", {{"ok", true}, {"stabilized_at", 2}}}};
      ex["pbw"] = {{"pbw_type", true}, {"graded_dims", g}};
      ex["corad"] = {{"gr_dims", fixed({1, 2, 2, 2, 1, 0})}};
    }
  } else {
    throw SpecError("unknown built-in '" + name + "'");
  }
  doc["expect"] = ex;
  return parse_spec(doc);
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"flip-d2-char0", "flip-d3-char0", "sl2", "restricted-gf2-abelian", "restricted-gf3",
          "stumbo", "kharchenko", "kharchenko-envelope-fixture"};
}

ProblemSpec builtin(const std::string& name) { return make(name); }

}  // namespace braidkit::workbench
