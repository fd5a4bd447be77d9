#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidkit/braided/word.hpp"
#include "braidkit/exact/matrix.hpp"

namespace braidkit::braided {

using exact::Field;
using exact::Matrix;
using exact::Scalar;
using exact::SparseVec;

class BraidingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Basis triple (i, j, k) of V⊗V⊗V on which the braid relation fails.
struct QybeWitness {
  int i, j, k;
};

// Braiding matrix convention: entry (row, col) is the coefficient of e_row in c(e_col),
// where x_i⊗x_j has index i*d + j.
std::optional<QybeWitness> qybe_violation(const Matrix& braiding, std::size_t d);
bool check_qybe(const Matrix& braiding, std::size_t d);

// Finite-dimensional braided vector space (V, c) with c invertible.
class BraidedSpace {
 public:
  using Term = std::pair<std::uint32_t, Scalar>;

  BraidedSpace(const Field& f, std::size_t d, const Matrix& braiding, std::vector<std::string> labels = {});
  static BraidedSpace flip(const Field& f, std::size_t d, std::vector<std::string> labels = {});
  // c(x_i⊗x_j) = q[i][j] x_j⊗x_i
  static BraidedSpace diagonal(const Field& f, const std::vector<std::vector<Scalar>>& q,
                               std::vector<std::string> labels = {});

  const Field& field() const { return field_; }
  std::size_t dim() const { return d_; }
  const Matrix& braiding() const { return braiding_; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Image of x_a⊗x_b as pair indices k*d + l.
  const std::vector<Term>& image(std::size_t a, std::size_t b) const { return images_[a * d_ + b]; }
  bool is_diagonal() const { return diagonal_; }

 private:
  Field field_;
  std::size_t d_;
  Matrix braiding_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Term>> images_;
  bool diagonal_ = true;
};

bool check_qybe(const BraidedSpace& s);

}  // namespace braidkit::braided
