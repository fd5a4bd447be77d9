#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace braidkit::braided {

// Letters are 0-based basis indices.
using Word = std::vector<int>;

std::uint64_t ipow(std::uint64_t b, unsigned e);

// Lexicographic index of w in V^{⊗|w|}.
std::uint32_t word_index(const Word& w, std::size_t d);
Word word_at(std::uint32_t index, std::size_t d, std::size_t n);

std::string word_string(const Word& w, const std::vector<std::string>& labels);

// Words of length <= M ordered by degree descending, then lex descending.
// Used where the leading term of an inhomogeneous element must come first.
class FilteredIndex {
 public:
  FilteredIndex(std::size_t d, std::size_t max_degree);
  std::size_t size() const { return size_; }
  std::size_t max_degree() const { return max_; }
  std::size_t dim() const { return d_; }
  std::uint32_t column(const Word& w) const;
  std::uint32_t column(std::size_t degree, std::uint32_t lex) const;
  Word word(std::uint32_t column) const;
  std::size_t degree(std::uint32_t column) const;
  std::uint32_t lex(std::uint32_t column) const;
  // Columns of degree n occupy [begin(n), begin(n) + d^n).
  std::uint32_t begin(std::size_t n) const { return offset_[n]; }

 private:
  std::size_t d_, max_, size_;
  std::vector<std::uint32_t> offset_;
};

}  // namespace braidkit::braided
