#include "braidkit/braided/operators.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>

namespace braidkit::braided {

namespace {

SparseVec combine(std::vector<std::pair<std::uint32_t, Scalar>>& terms, const Field&) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (std::size_t k = 0; k < terms.size();) {
    std::uint32_t at = terms[k].first;
    Scalar s = std::move(terms[k].second);
    for (++k; k < terms.size() && terms[k].first == at; ++k) s += terms[k].second;
    if (!s.is_zero()) out.push_back(at, std::move(s));
  }
  return out;
}

void check_degree(std::size_t d, std::size_t n) {
  if (ipow(d, static_cast<unsigned>(n)) > 0x7fffffffULL) throw BudgetExceeded("tensor power too large");
}

// Symmetrizer over positions [0, k) of V^{⊗n}.
SparseVec symmetrize_prefix(const BraidedSpace& s, std::size_t k, std::size_t n, const SparseVec& v) {
  if (k <= 1 || v.empty()) return v;
  SparseVec t = v;
  Scalar one = Scalar::one(s.field());
  for (std::size_t first = k - 1; first-- > 0;) {
    SparseVec x = v;
    for (std::size_t c = first; c <= k - 2; ++c) x = apply_crossing(s, c, n, x);
    t.axpy(one, x);
  }
  return symmetrize_prefix(s, k - 1, n, t);
}

}  // namespace

GradedOperator::GradedOperator(const Field& f, std::size_t d, std::size_t degree, std::vector<SparseVec> columns)
    : field_(f), d_(d), degree_(degree), columns_(std::move(columns)) {
  if (columns_.size() != ipow(d, static_cast<unsigned>(degree)))
    throw std::invalid_argument("operator column count does not match d^n");
}

GradedOperator GradedOperator::identity(const Field& f, std::size_t d, std::size_t degree) {
  std::vector<SparseVec> cols;
  std::size_t n = ipow(d, static_cast<unsigned>(degree));
  for (std::size_t j = 0; j < n; ++j) cols.push_back(SparseVec::unit(f, static_cast<std::uint32_t>(j)));
  return GradedOperator(f, d, degree, std::move(cols));
}

SparseVec GradedOperator::apply(const SparseVec& x) const {
  std::vector<std::pair<std::uint32_t, Scalar>> terms;
  for (std::size_t k = 0; k < x.idx.size(); ++k) {
    const auto& c = columns_.at(x.idx[k]);
    for (std::size_t t = 0; t < c.idx.size(); ++t) terms.emplace_back(c.idx[t], x.val[k] * c.val[t]);
  }
  return combine(terms, field_);
}

GradedOperator GradedOperator::compose(const GradedOperator& other) const {
  if (other.degree_ != degree_ || other.d_ != d_) throw std::invalid_argument("operator shape mismatch");
  std::vector<SparseVec> cols;
  for (const auto& c : other.columns_) cols.push_back(apply(c));
  return GradedOperator(field_, d_, degree_, std::move(cols));
}

GradedOperator GradedOperator::operator+(const GradedOperator& other) const {
  if (other.degree_ != degree_ || other.d_ != d_) throw std::invalid_argument("operator shape mismatch");
  GradedOperator out = *this;
  Scalar one = Scalar::one(field_);
  for (std::size_t j = 0; j < columns_.size(); ++j) out.columns_[j].axpy(one, other.columns_[j]);
  return out;
}

GradedOperator GradedOperator::tensor(const GradedOperator& a, const GradedOperator& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("operator shape mismatch");
  std::size_t nb = b.columns_.size();
  std::vector<SparseVec> cols;
  for (std::size_t i = 0; i < a.columns_.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      SparseVec c;
      const auto& ca = a.columns_[i];
      const auto& cb = b.columns_[j];
      for (std::size_t x = 0; x < ca.idx.size(); ++x)
        for (std::size_t y = 0; y < cb.idx.size(); ++y)
          c.push_back(static_cast<std::uint32_t>(ca.idx[x] * nb + cb.idx[y]), ca.val[x] * cb.val[y]);
      cols.push_back(std::move(c));
    }
  return GradedOperator(a.field_, a.d_, a.degree_ + b.degree_, std::move(cols));
}

Matrix GradedOperator::to_matrix() const { return Matrix::from_columns(field_, columns_.size(), columns_); }

std::size_t GradedOperator::rank() const { return exact::rank(to_matrix()); }

bool GradedOperator::operator==(const GradedOperator& o) const {
  return field_ == o.field_ && d_ == o.d_ && degree_ == o.degree_ && columns_ == o.columns_;
}

SparseVec apply_crossing(const BraidedSpace& s, std::size_t i, std::size_t n, const SparseVec& v) {
  if (i + 1 >= n) throw std::out_of_range("crossing position outside tensor power");
  std::size_t d = s.dim();
  std::size_t low = ipow(d, static_cast<unsigned>(n - i - 2));
  std::size_t dd = d * d;
  std::vector<std::pair<std::uint32_t, Scalar>> terms;
  terms.reserve(v.idx.size());
  for (std::size_t k = 0; k < v.idx.size(); ++k) {
    std::size_t idx = v.idx[k];
    std::size_t lo = idx % low;
    std::size_t pair = (idx / low) % dd;
    std::size_t top = idx / (low * dd);
    for (const auto& [to, coef] : s.image(pair / d, pair % d))
      terms.emplace_back(static_cast<std::uint32_t>((top * dd + to) * low + lo), coef * v.val[k]);
  }
  return combine(terms, s.field());
}

SparseVec apply_word(const BraidedSpace& s, const std::vector<int>& gens, std::size_t n, const SparseVec& v) {
  SparseVec x = v;
  for (std::size_t k = gens.size(); k-- > 0;) x = apply_crossing(s, static_cast<std::size_t>(gens[k]), n, x);
  return x;
}

std::size_t inversions(const Permutation& w) {
  std::size_t c = 0;
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b)
      if (w[a] > w[b]) ++c;
  return c;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) c[x] = a[static_cast<std::size_t>(b[x])];
  return c;
}

std::vector<int> reduced_word(const Permutation& w0) {
  Permutation w = w0;
  std::size_t n = w.size();
  {
    Permutation sorted = w;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t a = 0; a < n; ++a)
      if (sorted[a] != static_cast<int>(a)) throw std::invalid_argument("not a permutation");
  }
  std::vector<int> out;
  for (;;) {
    Permutation inv(n);
    for (std::size_t a = 0; a < n; ++a) inv[static_cast<std::size_t>(w[a])] = static_cast<int>(a);
    int found = -1;
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (inv[i] > inv[i + 1]) {
        found = static_cast<int>(i);
        break;
      }
    if (found < 0) break;
    out.push_back(found);
    // w <- s_found ∘ w
    for (auto& x : w) {
      if (x == found) x = found + 1;
      else if (x == found + 1) x = found;
    }
  }
  return out;
}

Permutation block_crossing(std::size_t n, std::size_t m) {
  Permutation w(n + m);
  for (std::size_t a = 0; a < n + m; ++a) w[a] = static_cast<int>(a < n ? a + m : a - n);
  return w;
}

Permutation shuffle_permutation(std::size_t n, const std::vector<int>& right) {
  Permutation w(n);
  std::vector<char> in(n, 0);
  for (int r : right) in[static_cast<std::size_t>(r)] = 1;
  std::size_t p = n - right.size();
  std::size_t left_rank = 0, right_rank = 0;
  for (std::size_t a = 0; a < n; ++a) w[a] = static_cast<int>(in[a] ? p + right_rank++ : left_rank++);
  return w;
}

GradedOperator sigma(const BraidedSpace& s, std::size_t i, std::size_t n) {
  if (i < 1 || i >= n) throw std::out_of_range("sigma index must satisfy 1 <= i <= n-1");
  check_degree(s.dim(), n);
  std::size_t size = ipow(s.dim(), static_cast<unsigned>(n));
  auto cols = kernels::build_columns(
      size, [&](std::size_t j) { return apply_crossing(s, i - 1, n, SparseVec::unit(s.field(), static_cast<std::uint32_t>(j))); },
      kernels::Exec::serial);
  return GradedOperator(s.field(), s.dim(), n, std::move(cols));
}

GradedOperator braid_lift(const BraidedSpace& s, const Permutation& w, kernels::Exec exec) {
  std::size_t n = w.size();
  check_degree(s.dim(), n);
  auto word = reduced_word(w);
  std::size_t size = ipow(s.dim(), static_cast<unsigned>(n));
  auto cols = kernels::build_columns(
      size, [&](std::size_t j) { return apply_word(s, word, n, SparseVec::unit(s.field(), static_cast<std::uint32_t>(j))); },
      exec);
  return GradedOperator(s.field(), s.dim(), n, std::move(cols));
}

GradedOperator ct_component(const BraidedSpace& s, std::size_t n, std::size_t m, kernels::Exec exec) {
  return braid_lift(s, block_crossing(n, m), exec);
}

namespace {

std::vector<std::vector<int>> compute_shuffle_words(std::size_t p, std::size_t q) {
  std::size_t n = p + q;
  std::vector<std::vector<int>> words;
  // subsets of size q in lex order
  std::vector<int> pick(q);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    words.push_back(reduced_word(shuffle_permutation(n, pick)));
    if (q == 0) break;
    std::size_t k = q;
    while (k > 0 && pick[k - 1] == static_cast<int>(n - q + k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t t = k; t < q; ++t) pick[t] = pick[t - 1] + 1;
  }
  return words;
}

}  // namespace

const std::vector<std::vector<int>>& shuffle_words(std::size_t p, std::size_t q) {
  static std::shared_mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<int>>> memo;
  {
    std::shared_lock lock(mu);
    auto it = memo.find({p, q});
    if (it != memo.end()) return it->second;
  }
  auto words = compute_shuffle_words(p, q);
  std::unique_lock lock(mu);
  return memo.emplace(std::make_pair(p, q), std::move(words)).first->second;
}

const std::vector<int>& block_crossing_word(std::size_t n, std::size_t m) {
  static std::shared_mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<int>> memo;
  {
    std::shared_lock lock(mu);
    auto it = memo.find({n, m});
    if (it != memo.end()) return it->second;
  }
  auto word = reduced_word(block_crossing(n, m));
  std::unique_lock lock(mu);
  return memo.emplace(std::make_pair(n, m), std::move(word)).first->second;
}

SparseVec apply_ct(const BraidedSpace& s, std::size_t n, std::size_t m, const SparseVec& v) {
  return apply_word(s, block_crossing_word(n, m), n + m, v);
}

SparseVec apply_delta(const BraidedSpace& s, std::size_t p, std::size_t q, const SparseVec& v) {
  std::size_t n = p + q;
  SparseVec out;
  Scalar one = Scalar::one(s.field());
  for (const auto& w : shuffle_words(p, q)) out.axpy(one, apply_word(s, w, n, v));
  return out;
}

GradedOperator delta_component(const BraidedSpace& s, std::size_t p, std::size_t q, kernels::Exec exec) {
  std::size_t n = p + q;
  check_degree(s.dim(), n);
  const auto& words = shuffle_words(p, q);
  Scalar one = Scalar::one(s.field());
  std::size_t size = ipow(s.dim(), static_cast<unsigned>(n));
  auto cols = kernels::build_columns(
      size,
      [&](std::size_t j) {
        SparseVec e = SparseVec::unit(s.field(), static_cast<std::uint32_t>(j)), out;
        for (const auto& w : words) out.axpy(one, apply_word(s, w, n, e));
        return out;
      },
      exec);
  return GradedOperator(s.field(), s.dim(), n, std::move(cols));
}

SparseVec apply_symmetrizer(const BraidedSpace& s, std::size_t n, const SparseVec& v) {
  return symmetrize_prefix(s, n, n, v);
}

GradedOperator quantum_symmetrizer(const BraidedSpace& s, std::size_t n, std::size_t factorial_budget,
                                   kernels::Exec exec) {
  if (n > factorial_budget)
    throw BudgetExceeded("symmetrizer degree " + std::to_string(n) + " exceeds factorial budget " +
                         std::to_string(factorial_budget));
  check_degree(s.dim(), n);
  std::size_t size = ipow(s.dim(), static_cast<unsigned>(n));
  auto cols = kernels::build_columns(
      size, [&](std::size_t j) { return apply_symmetrizer(s, n, SparseVec::unit(s.field(), static_cast<std::uint32_t>(j))); },
      exec);
  return GradedOperator(s.field(), s.dim(), n, std::move(cols));
}

}  // namespace braidkit::braided
