#include "braidkit/exact/subspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace braidkit::exact {

EchelonBuilder::EchelonBuilder(const Field& f, std::size_t ambient)
    : field_(f), ambient_(ambient), row_of_pivot_(ambient, -1), occ_(ambient) {}

SparseVec EchelonBuilder::reduce(const SparseVec& v) const {
  if (!acc_) acc_.emplace(field_, ambient_);
  return reduce(v, *acc_);
}

SparseVec EchelonBuilder::reduce(const SparseVec& v, Accumulator& acc) const {
  bool hit = false;
  for (auto c : v.idx)
    if (row_of_pivot_[c] >= 0) {
      hit = true;
      break;
    }
  if (!hit) return v;
  Scalar one = Scalar::one(field_);
  acc.add_scaled(one, v);
  for (std::size_t k = 0; k < v.idx.size(); ++k) {
    auto r = row_of_pivot_[v.idx[k]];
    if (r >= 0) acc.sub_scaled(v.val[k], rows_[static_cast<std::size_t>(r)]);
  }
  return acc.take();
}

bool EchelonBuilder::insert(const SparseVec& v) {
  for (auto c : v.idx)
    if (c >= ambient_) throw std::out_of_range("vector index outside ambient space");
  return insert_reduced(reduce(v));
}

bool EchelonBuilder::insert_reduced(SparseVec w) {
  if (w.empty()) return false;
  w.scale(w.val.front().inverse());
  std::uint32_t p = w.leading();
  auto& users = occ_[p];
  for (auto r : users) {
    auto& row = rows_[r];
    const Scalar* c = row.find(p);
    if (!c) continue;
    Scalar coef = -*c;
    row.axpy(coef, w);
    for (std::size_t k = 1; k < w.idx.size(); ++k) occ_[w.idx[k]].push_back(r);
  }
  users.clear();
  users.shrink_to_fit();
  auto id = static_cast<std::uint32_t>(rows_.size());
  for (std::size_t k = 1; k < w.idx.size(); ++k) occ_[w.idx[k]].push_back(id);
  row_of_pivot_[p] = static_cast<std::int32_t>(id);
  rows_.push_back(std::move(w));
  ++live_rows_;
  return true;
}

std::vector<SparseVec> EchelonBuilder::rows() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (std::size_t c = 0; c < ambient_; ++c)
    if (row_of_pivot_[c] >= 0) out.push_back(rows_[static_cast<std::size_t>(row_of_pivot_[c])]);
  return out;
}

Subspace EchelonBuilder::finish() const { return Subspace::from_rref(field_, ambient_, rows()); }

Subspace Subspace::span(const Field& f, std::size_t ambient, const std::vector<SparseVec>& vectors) {
  EchelonBuilder b(f, ambient);
  for (const auto& v : vectors) b.insert(v);
  return b.finish();
}

Subspace Subspace::full(const Field& f, std::size_t ambient) {
  std::vector<SparseVec> rows;
  for (std::size_t i = 0; i < ambient; ++i) rows.push_back(SparseVec::unit(f, static_cast<std::uint32_t>(i)));
  return from_rref(f, ambient, std::move(rows));
}

Subspace Subspace::from_rref(const Field& f, std::size_t ambient, std::vector<SparseVec> rows) {
  Subspace s(f, ambient);
  for (const auto& r : rows) s.pivots_.push_back(r.leading());
  s.rows_ = std::move(rows);
  return s;
}

SparseVec Subspace::reduce(const SparseVec& v) const {
  SparseVec out = v;
  for (std::size_t k = 0; k < v.idx.size(); ++k) {
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), v.idx[k]);
    if (it == pivots_.end() || *it != v.idx[k]) continue;
    out.axpy(-v.val[k], rows_[static_cast<std::size_t>(it - pivots_.begin())]);
  }
  return out;
}

std::optional<std::vector<Scalar>> Subspace::coordinates(const SparseVec& v) const {
  std::vector<Scalar> out(rows_.size(), Scalar::zero(field_));
  SparseVec rest = v;
  for (std::size_t k = 0; k < v.idx.size(); ++k) {
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), v.idx[k]);
    if (it == pivots_.end() || *it != v.idx[k]) continue;
    auto r = static_cast<std::size_t>(it - pivots_.begin());
    out[r] = v.val[k];
    rest.axpy(-v.val[k], rows_[r]);
  }
  if (!rest.empty()) return std::nullopt;
  return out;
}

void Subspace::check(const Subspace& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("subspaces over different fields");
  if (ambient_ != o.ambient_) throw std::invalid_argument("subspaces of different ambient spaces");
}

bool Subspace::contains(const Subspace& o) const {
  check(o);
  for (const auto& r : o.rows_)
    if (!contains(r)) return false;
  return true;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  a.check(b);
  EchelonBuilder e(a.field_, a.ambient_);
  for (const auto& r : a.rows_) e.insert(r);
  for (const auto& r : b.rows_) e.insert(r);
  return e.finish();
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  a.check(b);
  // Kernel of (s, t) -> sum s_i a_i - sum t_j b_j.
  std::vector<SparseVec> images;
  for (const auto& r : a.rows_) images.push_back(r);
  for (const auto& r : b.rows_) {
    SparseVec n = r;
    n.negate();
    images.push_back(std::move(n));
  }
  Subspace k = kernel_of_map(a.field_, images.size(), a.ambient_, images);
  std::vector<SparseVec> out;
  for (const auto& row : k.basis()) {
    SparseVec v;
    for (std::size_t t = 0; t < row.idx.size(); ++t)
      if (row.idx[t] < a.rows_.size()) v.axpy(row.val[t], a.rows_[row.idx[t]]);
    out.push_back(std::move(v));
  }
  return Subspace::span(a.field_, a.ambient_, out);
}

std::size_t quotient_dim(const Subspace& a, const Subspace& b) {
  if (!a.contains(b)) throw std::invalid_argument("quotient_dim: second subspace is not contained in the first");
  return a.dim() - b.dim();
}

bool Subspace::operator==(const Subspace& o) const {
  return field_ == o.field_ && ambient_ == o.ambient_ && rows_ == o.rows_;
}

}  // namespace braidkit::exact
