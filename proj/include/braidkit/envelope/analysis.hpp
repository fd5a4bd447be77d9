#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "braidkit/envelope/quotient.hpp"

namespace braidkit::envelope {

struct AnalysisOptions {
  std::size_t coradical_margin = 1;  // levels m <= N - margin are reported as exact
  std::size_t factorial_budget = 7;
  std::optional<std::size_t> max_steps;
};

// Coradical filtration U_0 ⊆ U_1 ⊆ ... inside U_(N), in U coordinates.
struct CoradicalData {
  std::size_t truncation = 0;
  std::size_t validity = 0;
  std::vector<Subspace> levels;  // m = 0..N
  std::vector<std::size_t> gr_dims;
  Subspace primitives{exact::Field::rationals(), 0};  // P(U), rows in RREF
};

// A braided subspace G ⊆ U used as generating space: basis in U coordinates (RREF)
// and the induced braiding on pairs whose degrees add up to at most N.
struct GeneratorSpace {
  std::vector<SparseVec> basis;
  std::vector<std::size_t> degrees;
  std::vector<std::uint32_t> pivots;
  std::map<std::pair<std::uint32_t, std::uint32_t>, MultiTensor> braiding;  // over G indices
  std::size_t dim() const { return basis.size(); }
};

// Truncated Nichols algebra of (G, c_G): tuples of G indices with total degree <= N.
struct NicholsTruncation {
  std::vector<std::vector<std::vector<std::uint32_t>>> tuples;  // by length m
  std::vector<Subspace> image;                                  // image of the symmetrizer, tuple coordinates
  std::vector<Subspace> kernel;                                 // kernel of the symmetrizer
  std::vector<std::size_t> dims;
  std::uint32_t index(std::size_t m, const std::vector<std::uint32_t>& t) const;
};

struct Witness {
  std::size_t level = 0;
  std::string element;
};

struct ThetaReport {
  bool holds = true;
  std::optional<Witness> witness;
};

struct PBWReport {
  bool pbw_type = false;
  ThetaReport theta;
  std::vector<std::size_t> graded_dims;
  std::vector<std::size_t> nichols_dims;
  std::optional<std::size_t> first_mismatch;
};

struct StrictReport {
  bool strictly_generated = false;
  bool condition_form = false;  // G^m ∩ U_{m-1} ⊆ U^G_(m-1) for all m checked
  std::vector<std::size_t> standard_dims;
  std::vector<std::size_t> coradical_dims;
  std::optional<Witness> witness;
  std::size_t validity = 0;
};

struct CosymReport {
  bool cosymmetric = true;
  std::optional<Witness> witness;
  std::size_t validity = 0;
};

struct LiftingReport {
  bool lifting = false;
  std::vector<std::size_t> gr_dims;
  std::vector<std::size_t> nichols_dims;
  bool linearization_injective = true;
  std::size_t validity = 0;
};

struct LinearizationMap {
  std::size_t level = 0;
  std::vector<SparseVec> source;     // complement of U_{m-1} in U_m
  std::vector<MultiTensor> images;   // in P^{⊗m}, keyed by P indices
  bool injective = true;
};

struct CrossCheck {
  PBWReport pbw;
  StrictReport strict;
  CosymReport cosym;
  LiftingReport lifting;
  bool consistent = false;
};

class InconsistencyError : public std::runtime_error {
 public:
  InconsistencyError(const std::string& what, CrossCheck c) : std::runtime_error(what), check(std::move(c)) {}
  CrossCheck check;
};

// Lazily computed invariants of one truncated envelope. Not thread-safe; use one per task.
class Analysis {
 public:
  explicit Analysis(FilteredPresentation fp, AnalysisOptions opt = {});
  Analysis(const Analysis&) = delete;
  Analysis& operator=(const Analysis&) = delete;

  const FilteredPresentation& presentation() const { return fp_; }
  const TruncatedQuotient& quotient() const { return q_; }
  const AnalysisOptions& options() const { return opt_; }
  const CoradicalData& coradical();
  const GeneratorSpace& generators();
  const GeneratorSpace& primitive_space();
  const NicholsTruncation& generator_nichols();
  const NicholsTruncation& primitive_nichols();
  // G-filtration levels U^G_(n), n = 0..N.
  const std::vector<Subspace>& standard_filtration();
  // Nichols ideal of V from the stabilized tower (degree-one generators).
  const tower::GradedPresentation& nichols_presentation();

  std::vector<std::size_t> graded_dims();
  ThetaReport theta_factors_check();
  PBWReport pbw_check();
  // Per degree n, lex-smallest words whose images form a basis of gr_n; degree-one generators only.
  std::vector<std::vector<Word>> pbw_basis();
  StrictReport strictly_generated_check();
  LinearizationMap linearization_map(std::size_t m);
  CosymReport cosymmetric_check();
  LiftingReport lifting_check();
  // Throws InconsistencyError when the four criteria disagree.
  CrossCheck teopbw_crosscheck();

 private:
  GeneratorSpace make_space(std::vector<SparseVec> basis, const std::string& what);
  NicholsTruncation make_nichols(const GeneratorSpace& g);
  SparseVec tuple_product(const GeneratorSpace& g, const std::vector<std::uint32_t>& t);
  MultiTensor to_p_tuples(const MultiTensor& t, std::size_t m);

  FilteredPresentation fp_;
  AnalysisOptions opt_;
  TruncatedQuotient q_;
  std::optional<CoradicalData> corad_;
  std::optional<GeneratorSpace> gens_, prims_;
  std::optional<NicholsTruncation> gen_nichols_, prim_nichols_;
  std::optional<std::vector<Subspace>> standard_;
  std::optional<tower::GradedPresentation> nichols_pres_;
};

}  // namespace braidkit::envelope
