#pragma once

#include <vector>

#include "braidkit/exact/sparse.hpp"

namespace braidkit::exact {

// Row-sparse matrix over a single field.
class Matrix {
 public:
  Matrix(const Field& f, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& f, std::size_t n);
  // Every entry must belong to f.
  static Matrix from_dense(const Field& f, const std::vector<std::vector<Scalar>>& rows);
  static Matrix from_rows(const Field& f, std::size_t cols, std::vector<SparseVec> rows);
  // columns[j] is the image of the j-th basis vector.
  static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<SparseVec>& columns);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar at(std::size_t r, std::size_t c) const { return data_[r].at(static_cast<std::uint32_t>(c), field_); }
  void set(std::size_t r, std::size_t c, const Scalar& v);
  const SparseVec& row(std::size_t r) const { return data_[r]; }
  SparseVec& row_mut(std::size_t r) { return data_[r]; }
  std::size_t nnz() const;
  double fill() const;

  Matrix transpose() const;
  SparseVec apply(const SparseVec& x) const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  bool operator==(const Matrix& o) const;

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<SparseVec> data_;
};

class Subspace;

struct Echelon {
  Matrix echelon;  // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;
  std::size_t rank;
};

// Canonical RREF; a dense elimination path is used once fill exceeds one half.
Echelon rref(const Matrix& m);
Echelon rref_dense(const Matrix& m);
Echelon rref_sparse(const Matrix& m);
// {x : m x = 0}
Subspace kernel(const Matrix& m);
// Kernel of the map sending basis vector j to images[j].
Subspace kernel_of_map(const Field& f, std::size_t source_dim, std::size_t target_dim,
                       const std::vector<SparseVec>& images);
std::size_t rank(const Matrix& m);

}  // namespace braidkit::exact
