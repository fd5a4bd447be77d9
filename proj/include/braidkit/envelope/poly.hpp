#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "braidkit/braided/word.hpp"
#include "braidkit/exact/sparse.hpp"

namespace braidkit::envelope {

using braided::Word;
using exact::Field;
using exact::Scalar;
using exact::SparseVec;

// Element of the tensor algebra T(V) as a finite sum of words.
class Poly {
 public:
  explicit Poly(const Field& f) : field_(f) {}
  static Poly monomial(const Field& f, const Word& w, const Scalar& c);
  static Poly from_vector(const Field& f, std::size_t d, std::size_t n, const SparseVec& v);

  const Field& field() const { return field_; }
  const std::map<Word, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Zero polynomial has degree 0.
  std::size_t degree() const;
  bool is_homogeneous() const;
  Poly part(std::size_t n) const;
  // Degree-n component as a vector of V^{⊗n} in lex order.
  SparseVec component(std::size_t n, std::size_t d) const;

  void add(const Word& w, const Scalar& c);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly scaled(const Scalar& c) const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly& o) const { return field_ == o.field_ && terms_ == o.terms_; }

  // Degree descending, then lex ascending; "0" for the zero polynomial.
  std::string to_string(const std::vector<std::string>& labels) const;

 private:
  Field field_;
  std::map<Word, Scalar> terms_;
};

// Parses sums like "x2 x1 - x1 x2 - x1", "3/2 e*f", "x1^3 - 1".
// Labels may be juxtaposed ("x2x1"); the longest matching label wins.
Poly parse_poly(std::string_view text, const std::vector<std::string>& labels, const Field& f);

}  // namespace braidkit::envelope
