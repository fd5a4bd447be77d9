#pragma once

#include <stdexcept>
#include <vector>

#include "braidkit/braided/braided_space.hpp"
#include "braidkit/kernels/exec.hpp"

namespace braidkit::braided {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Permutation in one-line notation: the letter at position a moves to position w[a].
using Permutation = std::vector<int>;

// Linear endomorphism of V^{⊗n} in lexicographic word order, stored by columns.
class GradedOperator {
 public:
  GradedOperator(const Field& f, std::size_t d, std::size_t degree, std::vector<SparseVec> columns);
  static GradedOperator identity(const Field& f, std::size_t d, std::size_t degree);

  const Field& field() const { return field_; }
  std::size_t dim() const { return d_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return columns_.size(); }
  const SparseVec& column(std::size_t j) const { return columns_[j]; }
  const std::vector<SparseVec>& columns() const { return columns_; }

  SparseVec apply(const SparseVec& x) const;
  // this ∘ other
  GradedOperator compose(const GradedOperator& other) const;
  GradedOperator operator+(const GradedOperator& other) const;
  // a ⊗ b acting on V^{⊗(deg a + deg b)}
  static GradedOperator tensor(const GradedOperator& a, const GradedOperator& b);
  Matrix to_matrix() const;
  std::size_t rank() const;
  bool operator==(const GradedOperator& o) const;

 private:
  Field field_;
  std::size_t d_, degree_;
  std::vector<SparseVec> columns_;
};

// Crossing c at positions (i, i+1), 0-based, applied to a vector of V^{⊗n}.
SparseVec apply_crossing(const BraidedSpace& s, std::size_t i, std::size_t n, const SparseVec& v);
// Applies σ_{w[0]} σ_{w[1]} ... (rightmost first), 0-based generators.
SparseVec apply_word(const BraidedSpace& s, const std::vector<int>& gens, std::size_t n, const SparseVec& v);

// Lexicographically smallest reduced word, 0-based generators, w = s_{r[0]} ∘ s_{r[1]} ∘ ...
std::vector<int> reduced_word(const Permutation& w);
std::size_t inversions(const Permutation& w);
Permutation compose(const Permutation& a, const Permutation& b);  // a ∘ b
Permutation block_crossing(std::size_t n, std::size_t m);
// Moves the positions in `right` (sorted) to the right block, keeping relative order.
Permutation shuffle_permutation(std::size_t n, const std::vector<int>& right);

// σ_i on V^{⊗n}, 1 <= i <= n-1.
GradedOperator sigma(const BraidedSpace& s, std::size_t i, std::size_t n);
GradedOperator braid_lift(const BraidedSpace& s, const Permutation& w,
                          kernels::Exec exec = kernels::Exec::parallel);
// c_T on V^{⊗n}⊗V^{⊗m} → V^{⊗m}⊗V^{⊗n}
GradedOperator ct_component(const BraidedSpace& s, std::size_t n, std::size_t m,
                            kernels::Exec exec = kernels::Exec::parallel);
// Component V^{⊗(p+q)} → V^{⊗p}⊗V^{⊗q} of the coproduct of T(V, c).
GradedOperator delta_component(const BraidedSpace& s, std::size_t p, std::size_t q,
                               kernels::Exec exec = kernels::Exec::parallel);
// Memoized reduced words of the (p, q)-shuffles and of the block crossing; safe for concurrent use.
const std::vector<std::vector<int>>& shuffle_words(std::size_t p, std::size_t q);
const std::vector<int>& block_crossing_word(std::size_t n, std::size_t m);
SparseVec apply_ct(const BraidedSpace& s, std::size_t n, std::size_t m, const SparseVec& v);
SparseVec apply_delta(const BraidedSpace& s, std::size_t p, std::size_t q, const SparseVec& v);
// Sum of the lifts of all permutations of S_n. Throws BudgetExceeded when n > factorial_budget.
GradedOperator quantum_symmetrizer(const BraidedSpace& s, std::size_t n, std::size_t factorial_budget = 7,
                                   kernels::Exec exec = kernels::Exec::parallel);
SparseVec apply_symmetrizer(const BraidedSpace& s, std::size_t n, const SparseVec& v);

}  // namespace braidkit::braided
