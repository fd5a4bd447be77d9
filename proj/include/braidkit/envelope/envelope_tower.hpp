#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "braidkit/envelope/analysis.hpp"

namespace braidkit::envelope {

// Stage rule: given U^[n] and a basis of P^[n] (U coordinates), return i^[n] b^[n] of each basis element.
using StageBracket = std::function<std::vector<SparseVec>(const TruncatedQuotient&, const std::vector<SparseVec>&)>;

struct EnvelopeRule {
  std::string name;
  StageBracket ib;
  bool generated_by_primitives = false;  // V^[n] := P^[n] instead of the image of V
};

// b^[n](p) = degree-one component of p.
EnvelopeRule trivial_rule();
// b^[n](p) = normal form of p modulo the ideal of `relations`, read off in the basis x_1..x_d.
EnvelopeRule relation_rule(std::shared_ptr<const BraidedSpace> s, const std::vector<Poly>& relations, std::size_t N,
                           const FilteredOptions& opt = {});
// b = Id on P^[n]: T(V) as the envelope of its primitives.
EnvelopeRule primitives_identity_rule();

struct StageReport {
  std::size_t stage = 0;
  std::vector<std::size_t> filtration_dims;
  std::size_t primitive_dim = 0;
  std::size_t v_dim = 0;
  bool i_injective = true;
  bool section_ok = true;  // b i = Id on V^[n]
  bool bracket_ok = true;  // compatibility of i b with the braiding on both sides
  bool split_ok = true;    // P = ker b ⊕ V^[n]
  bool kernel_ok = true;   // ker b = Im(Id - i b) = ker(π) ∩ P
  std::size_t new_relations = 0;
  std::vector<std::string> notes;
  bool ok() const { return i_injective && section_ok && bracket_ok && split_ok && kernel_ok; }
};

struct EnvelopeTower {
  std::string rule;
  std::vector<StageReport> stages;
  std::vector<FilteredPresentation> presentations;  // U^[0], U^[1], ...
  std::optional<std::size_t> stabilized_at;
  const FilteredPresentation& result() const { return presentations.back(); }
  bool ok() const;
};

EnvelopeTower tower_envelope(std::shared_ptr<const BraidedSpace> s, const EnvelopeRule& rule, std::size_t N,
                             const FilteredOptions& opt = {}, std::optional<std::size_t> max_stages = {});

struct KhaCosymStage {
  std::size_t stage = 0;
  bool cosymmetric = false;
  std::optional<Witness> witness;
};

// Cosymmetric stage n of the trivial-bracket tower must force rank <= n + 1.
struct KhaCosymReport {
  std::optional<std::size_t> rank;
  std::vector<KhaCosymStage> stages;
  bool consistent = true;
  std::string diagnostic;
};

KhaCosymReport khacosym_consistency(std::shared_ptr<const BraidedSpace> s, std::size_t N,
                                    std::optional<std::size_t> max_steps = {});

}  // namespace braidkit::envelope
