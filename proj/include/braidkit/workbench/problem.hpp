#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidkit/envelope/bracket.hpp"
#include "json.hpp"

namespace braidkit::workbench {

using json = nlohmann::ordered_json;

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Budgets {
  std::size_t factorial = 7;
  std::size_t max_headroom = 4;
  std::size_t coradical_margin = 1;
  std::optional<std::size_t> max_steps;   // tower steps, default N
  std::optional<std::size_t> max_stages;  // envelope tower stages, default N
};

// Input document, kept with its literals so that field overrides can re-read them.
struct ProblemSpec {
  std::string name;
  std::string field = "Q";
  std::size_t dim = 0;
  std::vector<std::string> labels;
  json braiding;  // {"diagonal": d×d} or {"matrix": d²×d²}, literals as strings
  json bracket;   // {"kind": ...}
  std::size_t truncation = 0;
  std::size_t headroom = 2;
  Budgets budgets;
  json expect = json::object();  // subcommand -> partial result
};

struct Problem {
  ProblemSpec spec;
  exact::Field field;
  std::shared_ptr<const braided::BraidedSpace> space;
  envelope::BracketSpec bracket;
};

// Schema check only; the braiding is not built.
ProblemSpec parse_spec(const json& doc);
json to_json(const ProblemSpec& s);

exact::Matrix braiding_matrix(const ProblemSpec& s, const exact::Field& f);
// Builds the braided space (QYBE and invertibility checked) and the bracket datum.
Problem materialize(const ProblemSpec& s);

std::vector<std::string> builtin_names();
ProblemSpec builtin(const std::string& name);
// "builtin:<name>" or a path to a JSON document.
ProblemSpec load_spec(const std::string& where);

}  // namespace braidkit::workbench
