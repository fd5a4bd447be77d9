#include "braidkit/braided/word.hpp"

#include <stdexcept>

namespace braidkit::braided {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint32_t word_index(const Word& w, std::size_t d) {
  std::uint64_t idx = 0;
  for (int l : w) idx = idx * d + static_cast<std::uint64_t>(l);
  return static_cast<std::uint32_t>(idx);
}

Word word_at(std::uint32_t index, std::size_t d, std::size_t n) {
  Word w(n);
  for (std::size_t k = n; k-- > 0;) {
    w[k] = static_cast<int>(index % d);
    index /= static_cast<std::uint32_t>(d);
  }
  return w;
}

std::string word_string(const Word& w, const std::vector<std::string>& labels) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += labels.at(static_cast<std::size_t>(w[k]));
  }
  return s;
}

FilteredIndex::FilteredIndex(std::size_t d, std::size_t max_degree) : d_(d), max_(max_degree), offset_(max_degree + 2, 0) {
  std::uint64_t total = 0;
  for (std::size_t n = max_degree + 1; n-- > 0;) {
    offset_[n] = static_cast<std::uint32_t>(total);
    total += ipow(d, static_cast<unsigned>(n));
  }
  if (total > 0xffffffffULL) throw std::length_error("truncated tensor algebra too large");
  size_ = static_cast<std::size_t>(total);
  offset_[max_degree + 1] = static_cast<std::uint32_t>(total);
}

std::uint32_t FilteredIndex::column(std::size_t degree, std::uint32_t lex) const {
  return offset_[degree] + static_cast<std::uint32_t>(ipow(d_, static_cast<unsigned>(degree)) - 1 - lex);
}

std::uint32_t FilteredIndex::column(const Word& w) const {
  if (w.size() > max_) throw std::out_of_range("word longer than truncation");
  return column(w.size(), word_index(w, d_));
}

std::size_t FilteredIndex::degree(std::uint32_t column) const {
  // offsets decrease with degree
  for (std::size_t n = 0; n <= max_; ++n)
    if (column >= offset_[n]) return n;
  throw std::out_of_range("bad column");
}

std::uint32_t FilteredIndex::lex(std::uint32_t column) const {
  std::size_t n = degree(column);
  return static_cast<std::uint32_t>(ipow(d_, static_cast<unsigned>(n)) - 1 - (column - offset_[n]));
}

Word FilteredIndex::word(std::uint32_t column) const {
  std::size_t n = degree(column);
  return word_at(lex(column), d_, n);
}

}  // namespace braidkit::braided
