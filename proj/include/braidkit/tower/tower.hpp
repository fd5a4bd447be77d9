#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidkit/braided/operators.hpp"
#include "braidkit/exact/subspace.hpp"

namespace braidkit::tower {

using braided::BraidedSpace;
using exact::Scalar;
using exact::SparseVec;
using exact::Subspace;

struct Violation {
  std::string kind;  // "ideal", "coideal" or "braiding"
  std::size_t degree;
  std::string detail;
};

class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(Violation v)
      : std::runtime_error(v.kind + " check failed in degree " + std::to_string(v.degree) + ": " + v.detail),
        violation(std::move(v)) {}
  Violation violation;
};

struct Verification {
  bool ideal_ok = true;
  bool coideal_ok = true;
  bool braiding_ok = true;
  std::optional<Violation> first;
  bool ok() const { return ideal_ok && coideal_ok && braiding_ok; }
};

// Graded quotient T(V)/I truncated at degree N; ideal[n] ⊆ V^{⊗n} in lex word order.
struct GradedPresentation {
  std::shared_ptr<const BraidedSpace> space;
  std::size_t truncation = 0;
  std::vector<Subspace> ideal;
  Verification verified;

  std::vector<std::size_t> quotient_dims() const;
  bool same_ideal(const GradedPresentation& o) const;
};

// Normal forms of words modulo I_p in quotient coordinates (non-pivot words, ascending).
class QuotientForms {
 public:
  explicit QuotientForms(const GradedPresentation& g);
  const SparseVec& nf(std::size_t p, std::uint32_t word) const { return nf_[p][word]; }
  std::size_t dim(std::size_t p) const { return dims_[p]; }
  // The word attached to quotient coordinate k of degree p.
  std::uint32_t standard_word(std::size_t p, std::size_t k) const { return standard_[p][k]; }
  // NF_p ⊗ NF_q applied to a vector of V^{⊗(p+q)}.
  SparseVec nf2(std::size_t p, std::size_t q, const SparseVec& v) const;

 private:
  std::size_t d_;
  exact::Field field_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<SparseVec>> nf_;
  std::vector<std::vector<std::uint32_t>> standard_;
};

GradedPresentation free_presentation(std::shared_ptr<const BraidedSpace> s, std::size_t N);
// Preimage in V^{⊗n} of the primitive elements of degree n of the quotient.
Subspace primitives_of_degree(const GradedPresentation& g, std::size_t n,
                              kernels::Exec exec = kernels::Exec::parallel);
// Two-sided ideal generated by gens[k] ⊆ V^{⊗k}, truncated at N.
std::vector<Subspace> ideal_closure(const BraidedSpace& s, const std::vector<Subspace>& gens, std::size_t N,
                                    kernels::Exec exec = kernels::Exec::parallel);
Verification verify(const GradedPresentation& g);
// Next stage: adjoin all primitives of degree >= 2. Throws VerificationError.
// fresh, if given, receives per degree the number of primitives not already in the ideal.
GradedPresentation tower_step(const GradedPresentation& g, kernels::Exec exec = kernels::Exec::parallel,
                              std::vector<std::size_t>* fresh = nullptr);

struct RankResult {
  std::optional<std::size_t> rank;  // empty when max_steps was exceeded
  std::vector<GradedPresentation> stages;
  // new_primitives[k][n]: dimension of primitives of degree n of stage k not already in its ideal
  std::vector<std::vector<std::size_t>> new_primitives;
  std::size_t truncation = 0;
  std::size_t max_steps = 0;
};

RankResult combinatorial_rank(std::shared_ptr<const BraidedSpace> s, std::size_t N, std::optional<std::size_t> max_steps = {});
// Dimensions of the stabilized tower, degrees 0..N. Throws if the tower does not stabilize.
std::vector<std::size_t> nichols_dims_tower(std::shared_ptr<const BraidedSpace> s, std::size_t N,
                                            std::optional<std::size_t> max_steps = {});
std::vector<std::size_t> nichols_dims_symmetrizer(const BraidedSpace& s, std::size_t N, std::size_t factorial_budget = 7);

class StabilizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace braidkit::tower
