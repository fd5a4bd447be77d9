#pragma once

#include <optional>
#include <string>
#include <vector>

#include "braidkit/kernels/exec.hpp"
#include "braidkit/workbench/problem.hpp"

namespace braidkit::workbench {

struct RunOptions {
  bool timing = false;
  kernels::Exec exec = kernels::Exec::parallel;
  std::optional<json> expect;  // partial result; falls back to spec.expect[subcommand] when empty
  bool use_embedded = false;
};

struct Outcome {
  json report;
  int exit_code = 0;  // 0 ok, 1 expectation violated, 2 error
};

const std::vector<std::string>& subcommands();

Outcome run(const std::string& subcommand, const ProblemSpec& spec, const RunOptions& opt = {});
// Every built-in against its embedded expectations.
Outcome run_corpus(const RunOptions& opt = {});

// Paths at which `actual` fails to contain `expected` (objects: subset; arrays: same length, elementwise).
std::vector<std::string> mismatches(const json& expected, const json& actual, const std::string& path = "");

std::string render_table(const json& report);
// x1^2 x2 style; the empty word is "1".
std::string power_word(const std::vector<int>& w, const std::vector<std::string>& labels);

}  // namespace braidkit::workbench
