#pragma once

#include <optional>
#include <vector>

#include "braidkit/exact/matrix.hpp"

namespace braidkit::exact {

// Incremental fully reduced row echelon form. Pivot of a row is its smallest index.
class EchelonBuilder {
 public:
  EchelonBuilder(const Field& f, std::size_t ambient);

  // True when v enlarged the span.
  bool insert(const SparseVec& v);
  // Inserts a vector already reduced against the current rows.
  bool insert_reduced(SparseVec w);
  SparseVec reduce(const SparseVec& v) const;
  SparseVec reduce(const SparseVec& v, Accumulator& acc) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return live_rows_; }
  std::size_t ambient() const { return ambient_; }
  const Field& field() const { return field_; }
  // Rows sorted by pivot.
  std::vector<SparseVec> rows() const;
  Subspace finish() const;

 private:
  Field field_;
  std::size_t ambient_;
  std::vector<SparseVec> rows_;
  std::vector<std::int32_t> row_of_pivot_;
  std::vector<std::vector<std::uint32_t>> occ_;
  std::size_t live_rows_ = 0;
  mutable std::optional<Accumulator> acc_;
};

// Subspace of K^n held as canonical RREF rows.
class Subspace {
 public:
  Subspace(const Field& f, std::size_t ambient) : field_(f), ambient_(ambient) {}
  static Subspace span(const Field& f, std::size_t ambient, const std::vector<SparseVec>& vectors);
  static Subspace full(const Field& f, std::size_t ambient);
  // Rows must already be canonical RREF sorted by pivot.
  static Subspace from_rref(const Field& f, std::size_t ambient, std::vector<SparseVec> rows);

  const Field& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<SparseVec>& basis() const { return rows_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }

  // Normal form modulo the subspace: pivot coordinates removed.
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  bool contains(const Subspace& o) const;
  // Coordinates of v in the row basis; nullopt if v is outside.
  std::optional<std::vector<Scalar>> coordinates(const SparseVec& v) const;

  friend Subspace sum(const Subspace& a, const Subspace& b);
  friend Subspace intersect(const Subspace& a, const Subspace& b);
  // dim a - dim b, requires b inside a.
  friend std::size_t quotient_dim(const Subspace& a, const Subspace& b);
  bool operator==(const Subspace& o) const;

 private:
  void check(const Subspace& o) const;
  Field field_;
  std::size_t ambient_;
  std::vector<SparseVec> rows_;
  std::vector<std::uint32_t> pivots_;
};

}  // namespace braidkit::exact
