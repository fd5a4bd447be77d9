#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidkit/envelope/poly.hpp"
#include "braidkit/tower/tower.hpp"

namespace braidkit::envelope {

using braided::BraidedSpace;

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BracketKind { trivial, rank1_map, lie_flip, restricted_flip, custom_tower };

std::string to_string(BracketKind k);
BracketKind bracket_kind_from_string(const std::string& s);

// beta(element) = value, element primitive in T of degree >= 2, value in V.
struct BracketPair {
  Poly element;
  Poly value;
};

// [x_left, x_right] = value
struct BracketEntry {
  int left;
  int right;
  Poly value;
};

struct BracketSpec {
  BracketKind kind = BracketKind::trivial;
  std::vector<BracketPair> pairs;
  std::vector<BracketEntry> brackets;
  std::vector<Poly> p_map;  // x_i^[p] for each i; empty means zero
  std::string rule;         // built-in rule name for custom_tower
};

struct RelationSet {
  std::vector<Poly> relations;
  std::vector<std::string> notes;
  bool homogeneous = true;
};

bool is_flip(const BraidedSpace& s);

// Relations lead - tail of the envelope, after checking the axioms of the bracket kind.
RelationSet relations_from_bracket(std::shared_ptr<const BraidedSpace> s, const BracketSpec& b, std::size_t N);

// Homogeneous generators of the ideal of a graded presentation that are not products of lower ones.
std::vector<Poly> minimal_generators(const tower::GradedPresentation& g);

}  // namespace braidkit::envelope
