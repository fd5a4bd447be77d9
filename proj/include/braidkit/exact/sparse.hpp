#pragma once

#include <cstdint>
#include <vector>

#include "braidkit/exact/scalar.hpp"

namespace braidkit::exact {

// Sparse vector: strictly increasing indices, no stored zeros.
struct SparseVec {
  std::vector<std::uint32_t> idx;
  std::vector<Scalar> val;

  static SparseVec unit(const Field& f, std::uint32_t i) {
    SparseVec v;
    v.idx.push_back(i);
    v.val.push_back(Scalar::one(f));
    return v;
  }

  bool empty() const { return idx.empty(); }
  std::size_t nnz() const { return idx.size(); }
  std::uint32_t leading() const { return idx.front(); }
  void push_back(std::uint32_t i, Scalar v) {
    idx.push_back(i);
    val.push_back(std::move(v));
  }
  // Zero when absent.
  const Scalar* find(std::uint32_t i) const;
  Scalar at(std::uint32_t i, const Field& f) const;

  // this += a * x
  void axpy(const Scalar& a, const SparseVec& x);
  void scale(const Scalar& a);
  void negate();

  bool operator==(const SparseVec& o) const = default;
};

// Scatter/gather workspace over a fixed ambient dimension.
class Accumulator {
 public:
  Accumulator(const Field& f, std::size_t n);
  void add(std::uint32_t i, const Scalar& a);
  void add_mul(std::uint32_t i, const Scalar& a, const Scalar& b);
  void sub_mul(std::uint32_t i, const Scalar& a, const Scalar& b);
  void add_scaled(const Scalar& a, const SparseVec& v);
  void sub_scaled(const Scalar& a, const SparseVec& v);
  const Scalar& at(std::uint32_t i) const { return vals_[i]; }
  bool touched(std::uint32_t i) const { return live_[i]; }
  // Returns the sorted nonzero content and clears the workspace.
  SparseVec take();
  void clear();
  std::size_t size() const { return vals_.size(); }

 private:
  void touch(std::uint32_t i);
  Field field_;
  Scalar zero_;
  std::vector<Scalar> vals_;
  std::vector<char> live_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace braidkit::exact
