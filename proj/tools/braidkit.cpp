#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "braidkit/workbench/run.hpp"

using namespace braidkit;
using namespace braidkit::workbench;

int main(int argc, char** argv) {
  CLI::App app{"braidkit: braided vector spaces, Nichols algebras and enveloping algebras"};
  std::string command, spec_arg, field, expect_file;
  std::optional<std::size_t> degree, headroom;
  bool as_json = false, as_table = false, timing = false, serial = false, embedded = false, print_spec = false;
  app.add_option("command", command, "subcommand")->required()->check(CLI::IsMember(subcommands()));
  app.add_option("--spec", spec_arg, "spec file or builtin:<name>");
  app.add_option("--degree", degree, "truncation degree N");
  app.add_option("--headroom", headroom, "headroom H");
  app.add_option("--field", field, "Q or GF:p, re-reads the input literals");
  app.add_option("--expect", expect_file, "expected partial result, keyed by subcommand");
  auto* j = app.add_flag("--json", as_json, "JSON report (default)");
  app.add_flag("--table", as_table, "human-readable report")->excludes(j);
  app.add_flag("--timing", timing, "add wall-clock timing to the report");
  app.add_flag("--serial", serial, "run kernels without OpenMP");
  app.add_flag("--check-embedded", embedded, "compare against the expectations embedded in the input");
  app.add_flag("--print-spec", print_spec, "print the resolved spec (with embedded expectations) and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  RunOptions opt;
  opt.timing = timing;
  opt.exec = serial ? kernels::Exec::serial : kernels::Exec::parallel;
  opt.use_embedded = embedded;
  Outcome out;
  if (command == "corpus") {
    out = run_corpus(opt);
  } else {
    ProblemSpec spec;
    try {
      if (spec_arg.empty()) throw SpecError("--spec is required");
      spec = load_spec(spec_arg);
      if (degree) spec.truncation = *degree;
      if (headroom) {
        spec.headroom = *headroom;
        spec.budgets.max_headroom = std::max(spec.budgets.max_headroom, *headroom);
      }
      if (!field.empty()) {
        if (field.rfind("GF:", 0) == 0) field = "GF(" + field.substr(3) + ")";
        exact::Field::parse(field);
        spec.field = field;
      }
      if (!expect_file.empty()) {
        std::ifstream in(expect_file);
        if (!in) throw SpecError("cannot open expectation file '" + expect_file + "'");
        json e = json::parse(in);
        if (!e.is_object() || !e.contains(command))
          throw SpecError("expectation file has no entry for '" + command + "'");
        opt.expect = e[command];
      }
    } catch (const std::exception& e) {
      json err = {{"command", command}, {"error", {{"type", "spec"}, {"message", e.what()}, {"hint", "see docs/schema.md"}}}};
      std::cout << (as_table ? render_table(err) : err.dump(2) + "\n");
      std::cerr << "braidkit: " << e.what() << "\n";
      return 2;
    }
    if (print_spec) {
      std::cout << to_json(spec).dump(2) << "\n";
      return 0;
    }
    out = run(command, spec, opt);
  }
  std::cout << (as_table ? render_table(out.report) : out.report.dump(2) + "\n");
  if (out.report.contains("error")) std::cerr << "braidkit: " << out.report["error"]["message"].get<std::string>() << "\n";
  if (out.exit_code == 1) std::cerr << "braidkit: expectation violated\n";
  return out.exit_code;
}
