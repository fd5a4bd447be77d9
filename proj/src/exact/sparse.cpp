#include "braidkit/exact/sparse.hpp"

#include <algorithm>

namespace braidkit::exact {

const Scalar* SparseVec::find(std::uint32_t i) const {
  auto it = std::lower_bound(idx.begin(), idx.end(), i);
  if (it == idx.end() || *it != i) return nullptr;
  return &val[static_cast<std::size_t>(it - idx.begin())];
}

Scalar SparseVec::at(std::uint32_t i, const Field& f) const {
  if (auto p = find(i)) return *p;
  return Scalar::zero(f);
}

void SparseVec::axpy(const Scalar& a, const SparseVec& x) {
  if (a.is_zero() || x.empty()) return;
  SparseVec out;
  out.idx.reserve(idx.size() + x.idx.size());
  out.val.reserve(idx.size() + x.idx.size());
  std::size_t i = 0, j = 0;
  while (i < idx.size() || j < x.idx.size()) {
    if (j == x.idx.size() || (i < idx.size() && idx[i] < x.idx[j])) {
      out.push_back(idx[i], std::move(val[i]));
      ++i;
    } else if (i == idx.size() || x.idx[j] < idx[i]) {
      out.push_back(x.idx[j], a * x.val[j]);
      ++j;
    } else {
      Scalar s = std::move(val[i]);
      s.add_mul(a, x.val[j]);
      if (!s.is_zero()) out.push_back(idx[i], std::move(s));
      ++i;
      ++j;
    }
  }
  *this = std::move(out);
}

void SparseVec::scale(const Scalar& a) {
  if (a.is_zero()) {
    idx.clear();
    val.clear();
    return;
  }
  for (auto& v : val) v *= a;
}

void SparseVec::negate() {
  for (auto& v : val) v = -v;
}

Accumulator::Accumulator(const Field& f, std::size_t n)
    : field_(f), zero_(Scalar::zero(f)), vals_(n, zero_), live_(n, 0) {}

void Accumulator::touch(std::uint32_t i) {
  if (!live_[i]) {
    live_[i] = 1;
    touched_.push_back(i);
  }
}

void Accumulator::add(std::uint32_t i, const Scalar& a) {
  touch(i);
  vals_[i] += a;
}

void Accumulator::add_mul(std::uint32_t i, const Scalar& a, const Scalar& b) {
  touch(i);
  vals_[i].add_mul(a, b);
}

void Accumulator::sub_mul(std::uint32_t i, const Scalar& a, const Scalar& b) {
  touch(i);
  vals_[i].sub_mul(a, b);
}

void Accumulator::add_scaled(const Scalar& a, const SparseVec& v) {
  for (std::size_t k = 0; k < v.idx.size(); ++k) add_mul(v.idx[k], a, v.val[k]);
}

void Accumulator::sub_scaled(const Scalar& a, const SparseVec& v) {
  for (std::size_t k = 0; k < v.idx.size(); ++k) sub_mul(v.idx[k], a, v.val[k]);
}

SparseVec Accumulator::take() {
  std::sort(touched_.begin(), touched_.end());
  SparseVec out;
  for (auto i : touched_) {
    if (!vals_[i].is_zero()) out.push_back(i, vals_[i]);
    vals_[i] = zero_;
    live_[i] = 0;
  }
  touched_.clear();
  return out;
}

void Accumulator::clear() {
  for (auto i : touched_) {
    vals_[i] = zero_;
    live_[i] = 0;
  }
  touched_.clear();
}

}  // namespace braidkit::exact
