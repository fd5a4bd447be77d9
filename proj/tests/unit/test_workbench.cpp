#include "braidkit/workbench/run.hpp"
#include "doctest.h"

using namespace braidkit;
using namespace braidkit::workbench;
using exact::Scalar;

TEST_CASE("built-in corpus specs parse and materialize") {
  CHECK(builtin_names().size() == 8);
  for (const auto& name : builtin_names()) {
    ProblemSpec s = builtin(name);
    CHECK(s.name == name);
    Problem p = materialize(s);
    CHECK(p.space->dim() == s.dim);
    // echo is a fixed point of parse
    CHECK(to_json(parse_spec(to_json(s))).dump() == to_json(s).dump());
  }
  Problem k = materialize(builtin("kharchenko"));
  CHECK(k.space->is_diagonal());
  CHECK(k.space->image(0, 1).front().second == Scalar(exact::Field::rationals(), 1));
  CHECK(k.space->image(1, 0).front().second == Scalar(exact::Field::rationals(), -1));
  CHECK_THROWS_AS(builtin("nope"), SpecError);
}

TEST_CASE("schema violations are rejected") {
  json base = to_json(builtin("stumbo"));
  auto broken = [&](auto mutate) {
    json d = base;
    mutate(d);
    return d;
  };
  CHECK_THROWS_AS(parse_spec(broken([](json& d) { d.erase("dim"); })), SpecError);
  CHECK_THROWS_AS(parse_spec(broken([](json& d) { d["colour"] = 1; })), SpecError);
  CHECK_THROWS_AS(parse_spec(broken([](json& d) { d["braiding"] = {{"diagonal", {{"1"}}}}; })), SpecError);
  CHECK_THROWS_AS(parse_spec(broken([](json& d) { d["braiding"]["diagonal"][0][0] = 0.5; })), SpecError);
  CHECK_THROWS(parse_spec(broken([](json& d) { d["field"] = "GF(4)"; })));
  CHECK_THROWS_AS(materialize(parse_spec(broken([](json& d) { d["bracket"]["kind"] = "custom_tower"; }))), SpecError);
  CHECK_THROWS_AS(materialize(parse_spec(broken([](json& d) { d["braiding"]["diagonal"][0][0] = "0"; }))),
                  braided::BraidingError);
}

TEST_CASE("reports are deterministic and round-trip") {
  ProblemSpec s = builtin("stumbo");
  s.truncation = 4;
  for (const auto& sub : {"rank", "pbw-basis", "crosscheck"}) {
    Outcome a = run(sub, s), b = run(sub, s);
    CHECK(a.exit_code == 0);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(json::parse(a.report.dump(2)) == a.report);
    CHECK(json::parse(a.report.dump(2)).dump(2) == a.report.dump(2));
  }
  RunOptions t;
  t.timing = true;
  CHECK(run("rank", s, t).report.contains("timing"));
  CHECK_FALSE(run("rank", s).report.contains("timing"));
}

TEST_CASE("expectations and exit codes") {
  ProblemSpec s = builtin("kharchenko");
  RunOptions o;
  o.expect = json{{"rank", 2}};
  CHECK(run("rank", s, o).exit_code == 0);
  o.expect = json{{"rank", 3}};
  Outcome bad = run("rank", s, o);
  CHECK(bad.exit_code == 1);
  CHECK(bad.report["expectations"]["mismatches"][0] == "result.rank: expected 3, got 2");
  s.truncation = 9;
  CHECK(run("nichols", s).exit_code == 2);
  CHECK(run("nichols", s).report["error"]["type"] == "budget");
  CHECK(run("pbw-basis", builtin("kharchenko-envelope-fixture")).exit_code == 2);

  CHECK(mismatches(json{{"a", {1, 2}}}, json{{"a", {1, 2}}, {"b", 0}}).empty());
  CHECK(mismatches(json{{"a", {1, 2}}}, json{{"a", {1, 2, 3}}}).size() == 1);
  CHECK(mismatches(json{{"a", {{{"x", 1}}}}}, json{{"a", {{{"x", 1}, {"y", 2}}}}}).empty());
  CHECK(mismatches(json{{"c", true}}, json::object()) == std::vector<std::string>{"result.c: missing"});
}

TEST_CASE("word formatting and field override") {
  std::vector<std::string> labels = {"e", "h", "f"};
  CHECK(power_word({}, labels) == "1");
  CHECK(power_word({0, 0, 1, 2, 2, 2}, labels) == "e^2 h f^3");
  CHECK(power_word({1, 0, 1}, labels) == "h e h");
  ProblemSpec s = builtin("flip-d2-char0");
  s.field = "GF(2)";
  s.truncation = 4;
  Outcome o = run("nichols", s);
  CHECK(o.report["result"]["tower_dims"] == json({1, 2, 1, 0, 0}));
  ProblemSpec st = builtin("stumbo");
  st.field = "GF(2)";
  CHECK(run("qybe", st).exit_code == 2);  // q11 = 2 vanishes, c is singular
}
