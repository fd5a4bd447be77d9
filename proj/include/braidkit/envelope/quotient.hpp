#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidkit/envelope/filtered.hpp"

namespace braidkit::envelope {

class PresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// U ⊗ ... ⊗ U element keyed by tuples of U coordinates.
using MultiTensor = std::map<std::vector<std::uint32_t>, Scalar>;

void add_to(MultiTensor& t, const std::vector<std::uint32_t>& key, const Scalar& c);

struct BialgebraCheck {
  bool coideal_ok = true;
  bool braided_ok = true;
  std::string witness;
};

// Truncated quotient U_(N) = T_(N)/F with its induced structure maps.
// Coordinates are the standard (non-pivot) words in FilteredIndex order:
// degree descending, lex descending, so the empty word is last.
class TruncatedQuotient {
 public:
  explicit TruncatedQuotient(const FilteredPresentation& fp);

  const FilteredPresentation& presentation() const { return *fp_; }
  const BraidedSpace& space() const { return *fp_->space; }
  const Field& field() const { return fp_->space->field(); }
  std::size_t truncation() const { return fp_->truncation; }
  std::size_t dim() const { return words_.size(); }
  std::uint32_t unit() const { return static_cast<std::uint32_t>(words_.size() - 1); }
  const Word& word(std::uint32_t k) const { return words_[k]; }
  std::size_t degree(std::uint32_t k) const { return words_[k].size(); }
  // Highest degree occurring in v (its pivot in this order).
  std::size_t degree(const SparseVec& v) const { return v.empty() ? 0 : degree(v.leading()); }

  const SparseVec& nf(const Word& w) const;
  const SparseVec& nf(std::size_t n, std::uint32_t lex) const;
  SparseVec nf(const Poly& p) const;
  // Element of U as a polynomial in standard words.
  Poly to_poly(const SparseVec& v) const;
  std::string to_string(const SparseVec& v) const;

  // Reduced coproduct of a standard word, pairs keyed by (i, j).
  const MultiTensor& reduced_coproduct(std::uint32_t k) const { return rdelta_[k]; }
  // Iterated reduced coproduct into (U^+)^{⊗m}, m >= 1, of a basis vector.
  const MultiTensor& iterated(std::uint32_t k, std::size_t m) const;
  MultiTensor iterated(const SparseVec& v, std::size_t m) const;

  // Product; nullopt when deg a + deg b exceeds N.
  std::optional<SparseVec> multiply(const SparseVec& a, const SparseVec& b) const;
  // Induced braiding on standard words with deg a + deg b <= N.
  MultiTensor braid(std::uint32_t a, std::uint32_t b) const;
  MultiTensor braid(const SparseVec& a, const SparseVec& b) const;

  // Coideal and braided-ideal conditions on the rows of F.
  BialgebraCheck check_bialgebra() const;
  bool degree_one_injective() const { return degree_one_injective_; }

 private:
  const FilteredPresentation* fp_;
  FilteredIndex idx_;
  std::vector<Word> words_;
  std::vector<SparseVec> nf_;  // by FilteredIndex column
  std::vector<MultiTensor> rdelta_;
  mutable std::vector<std::vector<MultiTensor>> iter_;
  bool degree_one_injective_ = true;
};

}  // namespace braidkit::envelope
