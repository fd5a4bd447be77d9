#include "braidkit/braided/braided_space.hpp"

#include <algorithm>

#include "braidkit/braided/operators.hpp"

namespace braidkit::braided {

namespace {

using Images = std::vector<std::vector<BraidedSpace::Term>>;

Images images_of(const Matrix& c) {
  Images im(c.cols());
  Matrix t = c.transpose();
  for (std::size_t col = 0; col < c.cols(); ++col) {
    const auto& r = t.row(col);
    for (std::size_t k = 0; k < r.idx.size(); ++k) im[col].emplace_back(r.idx[k], r.val[k]);
  }
  return im;
}

// c at positions (i, i+1) on a single word of V^{⊗3}, accumulated into out.
void cross3(const Images& im, std::size_t d, std::size_t i, const SparseVec& v, SparseVec& out, const Field& f) {
  std::vector<std::pair<std::uint32_t, Scalar>> terms;
  std::size_t low = i == 0 ? d : 1;
  for (std::size_t k = 0; k < v.idx.size(); ++k) {
    std::uint32_t idx = v.idx[k];
    std::size_t lo = idx % low;
    std::size_t pair = (idx / low) % (d * d);
    std::size_t top = idx / (low * d * d);
    for (const auto& [to, coef] : im[pair])
      terms.emplace_back(static_cast<std::uint32_t>((top * d * d + to) * low + lo), coef * v.val[k]);
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out = SparseVec();
  for (std::size_t k = 0; k < terms.size();) {
    Scalar s = Scalar::zero(f);
    std::uint32_t at = terms[k].first;
    for (; k < terms.size() && terms[k].first == at; ++k) s += terms[k].second;
    if (!s.is_zero()) out.push_back(at, std::move(s));
  }
}

}  // namespace

std::optional<QybeWitness> qybe_violation(const Matrix& braiding, std::size_t d) {
  if (braiding.rows() != d * d || braiding.cols() != d * d)
    throw BraidingError("braiding matrix must be " + std::to_string(d * d) + "x" + std::to_string(d * d));
  Images im = images_of(braiding);
  const Field& f = braiding.field();
  for (std::uint32_t w = 0; w < d * d * d; ++w) {
    SparseVec a = SparseVec::unit(f, w), b = a, t;
    cross3(im, d, 0, a, t, f);
    cross3(im, d, 1, t, a, f);
    cross3(im, d, 0, a, t, f);
    a = t;
    cross3(im, d, 1, b, t, f);
    cross3(im, d, 0, t, b, f);
    cross3(im, d, 1, b, t, f);
    if (!(a == t)) {
      Word x = word_at(w, d, 3);
      return QybeWitness{x[0], x[1], x[2]};
    }
  }
  return std::nullopt;
}

bool check_qybe(const Matrix& braiding, std::size_t d) { return !qybe_violation(braiding, d).has_value(); }

bool check_qybe(const BraidedSpace& s) { return check_qybe(s.braiding(), s.dim()); }

BraidedSpace::BraidedSpace(const Field& f, std::size_t d, const Matrix& braiding, std::vector<std::string> labels)
    : field_(f), d_(d), braiding_(braiding), labels_(std::move(labels)) {
  if (d == 0) throw BraidingError("dimension must be positive");
  if (!(braiding.field() == f)) throw exact::FieldMismatch("braiding over " + braiding.field().name() + ", expected " + f.name());
  if (labels_.empty())
    for (std::size_t i = 0; i < d; ++i) labels_.push_back("x" + std::to_string(i + 1));
  if (labels_.size() != d) throw BraidingError("label count differs from dimension");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (labels_[i] == labels_[j]) throw BraidingError("duplicate label " + labels_[i]);
  if (auto w = qybe_violation(braiding, d))
    throw BraidingError("braid equation fails on basis triple (" + labels_[w->i] + ", " + labels_[w->j] + ", " +
                        labels_[w->k] + ")");
  if (exact::rank(braiding) != d * d) throw BraidingError("braiding is not invertible");
  images_ = images_of(braiding);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const auto& im = images_[a * d + b];
      if (im.size() != 1 || im.front().first != b * d + a) diagonal_ = false;
    }
}

BraidedSpace BraidedSpace::flip(const Field& f, std::size_t d, std::vector<std::string> labels) {
  std::vector<std::vector<Scalar>> q(d, std::vector<Scalar>(d, Scalar::one(f)));
  return diagonal(f, q, std::move(labels));
}

BraidedSpace BraidedSpace::diagonal(const Field& f, const std::vector<std::vector<Scalar>>& q,
                                    std::vector<std::string> labels) {
  std::size_t d = q.size();
  Matrix c(f, d * d, d * d);
  for (std::size_t i = 0; i < d; ++i) {
    if (q[i].size() != d) throw BraidingError("diagonal braiding matrix must be square");
    for (std::size_t j = 0; j < d; ++j) c.set(j * d + i, i * d + j, q[i][j]);
  }
  return BraidedSpace(f, d, c, std::move(labels));
}

}  // namespace braidkit::braided
