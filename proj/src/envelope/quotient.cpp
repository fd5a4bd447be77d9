#include "braidkit/envelope/quotient.hpp"

#include "braidkit/braided/operators.hpp"

namespace braidkit::envelope {

using braided::ipow;

void add_to(MultiTensor& t, const std::vector<std::uint32_t>& key, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = t.find(key);
  if (it == t.end()) {
    t.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t.erase(it);
}

namespace {

std::size_t power(std::size_t d, std::size_t n) { return ipow(d, static_cast<unsigned>(n)); }

}  // namespace

TruncatedQuotient::TruncatedQuotient(const FilteredPresentation& fp) : fp_(&fp), idx_(fp.index()) {
  const Field& f = field();
  std::size_t size = idx_.size();
  std::uint32_t empty = idx_.column(0, 0);
  std::vector<std::int32_t> row_of(size, -1);
  const auto& rows = fp.ideal.basis();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    row_of[rows[r].leading()] = static_cast<std::int32_t>(r);
    if (rows[r].find(empty)) {
      if (rows[r].leading() == empty) throw PresentationError("relations collapse the unit: 1 lies in the ideal");
      throw PresentationError("relation ideal is not contained in the augmentation ideal");
    }
    if (idx_.degree(rows[r].leading()) <= 1) degree_one_injective_ = false;
  }
  std::vector<std::int64_t> coord(size, -1);
  for (std::uint32_t c = 0; c < size; ++c)
    if (row_of[c] < 0) {
      coord[c] = static_cast<std::int64_t>(words_.size());
      words_.push_back(idx_.word(c));
    }
  if (words_.size() * words_.size() > 0xffffffffULL) throw PresentationError("truncated quotient too large");
  nf_.resize(size);
  for (std::uint32_t c = 0; c < size; ++c) {
    if (row_of[c] < 0) {
      nf_[c] = SparseVec::unit(f, static_cast<std::uint32_t>(coord[c]));
      continue;
    }
    const SparseVec& r = rows[static_cast<std::size_t>(row_of[c])];
    SparseVec v;
    for (std::size_t k = 1; k < r.idx.size(); ++k) v.push_back(static_cast<std::uint32_t>(coord[r.idx[k]]), -r.val[k]);
    nf_[c] = std::move(v);
  }
  const BraidedSpace& s = space();
  std::size_t d = s.dim();
  rdelta_.resize(words_.size());
  for (std::uint32_t k = 0; k < words_.size(); ++k) {
    const Word& w = words_[k];
    std::size_t n = w.size();
    SparseVec e = SparseVec::unit(f, braided::word_index(w, d));
    for (std::size_t p = 1; p < n; ++p) {
      std::size_t low = power(d, n - p);
      SparseVec dv = braided::apply_delta(s, p, n - p, e);
      for (std::size_t t = 0; t < dv.idx.size(); ++t) {
        const SparseVec& a = nf(p, static_cast<std::uint32_t>(dv.idx[t] / low));
        const SparseVec& b = nf(n - p, static_cast<std::uint32_t>(dv.idx[t] % low));
        for (std::size_t x = 0; x < a.idx.size(); ++x)
          for (std::size_t y = 0; y < b.idx.size(); ++y)
            add_to(rdelta_[k], {a.idx[x], b.idx[y]}, dv.val[t] * a.val[x] * b.val[y]);
      }
    }
  }
  iter_.resize(words_.size());
}

const SparseVec& TruncatedQuotient::nf(const Word& w) const { return nf_[idx_.column(w)]; }

const SparseVec& TruncatedQuotient::nf(std::size_t n, std::uint32_t lex) const { return nf_[idx_.column(n, lex)]; }

SparseVec TruncatedQuotient::nf(const Poly& p) const {
  exact::Accumulator acc(field(), dim());
  for (const auto& [w, c] : p.terms()) {
    if (w.size() > truncation()) throw std::out_of_range("polynomial above truncation");
    acc.add_scaled(c, nf(w));
  }
  return acc.take();
}

Poly TruncatedQuotient::to_poly(const SparseVec& v) const {
  Poly p(field());
  for (std::size_t k = 0; k < v.idx.size(); ++k) p.add(words_[v.idx[k]], v.val[k]);
  return p;
}

std::string TruncatedQuotient::to_string(const SparseVec& v) const { return to_poly(v).to_string(space().labels()); }

const MultiTensor& TruncatedQuotient::iterated(std::uint32_t k, std::size_t m) const {
  auto& cache = iter_[k];
  if (cache.size() < 2) {
    cache.resize(2);
    cache[1][{k}] = Scalar::one(field());
  }
  while (cache.size() <= m) {
    MultiTensor next;
    for (const auto& [key, c] : cache.back()) {
      for (const auto& [pair, c2] : rdelta_[key[0]]) {
        std::vector<std::uint32_t> nk;
        nk.reserve(key.size() + 1);
        nk.push_back(pair[0]);
        nk.push_back(pair[1]);
        nk.insert(nk.end(), key.begin() + 1, key.end());
        add_to(next, nk, c * c2);
      }
    }
    cache.push_back(std::move(next));
  }
  return cache[m];
}

MultiTensor TruncatedQuotient::iterated(const SparseVec& v, std::size_t m) const {
  MultiTensor out;
  for (std::size_t k = 0; k < v.idx.size(); ++k) {
    if (v.idx[k] == unit()) throw std::invalid_argument("iterated reduced coproduct needs an augmentation element");
    for (const auto& [key, c] : iterated(v.idx[k], m)) add_to(out, key, c * v.val[k]);
  }
  return out;
}

std::optional<SparseVec> TruncatedQuotient::multiply(const SparseVec& a, const SparseVec& b) const {
  if (degree(a) + degree(b) > truncation()) return std::nullopt;
  exact::Accumulator acc(field(), dim());
  for (std::size_t x = 0; x < a.idx.size(); ++x)
    for (std::size_t y = 0; y < b.idx.size(); ++y) {
      Word w = words_[a.idx[x]];
      const Word& v = words_[b.idx[y]];
      w.insert(w.end(), v.begin(), v.end());
      acc.add_scaled(a.val[x] * b.val[y], nf(w));
    }
  return acc.take();
}

MultiTensor TruncatedQuotient::braid(std::uint32_t a, std::uint32_t b) const {
  const Word& wa = words_[a];
  const Word& wb = words_[b];
  std::size_t n = wa.size(), m = wb.size(), d = space().dim();
  if (n + m > truncation()) throw std::out_of_range("braiding above truncation");
  MultiTensor out;
  if (n == 0 || m == 0) {
    out[{b, a}] = Scalar::one(field());
    return out;
  }
  std::uint32_t in = static_cast<std::uint32_t>(braided::word_index(wa, d) * power(d, m) + braided::word_index(wb, d));
  SparseVec cv = braided::apply_ct(space(), n, m, SparseVec::unit(field(), in));
  std::size_t low = power(d, n);
  for (std::size_t t = 0; t < cv.idx.size(); ++t) {
    const SparseVec& x = nf(m, static_cast<std::uint32_t>(cv.idx[t] / low));
    const SparseVec& y = nf(n, static_cast<std::uint32_t>(cv.idx[t] % low));
    for (std::size_t i = 0; i < x.idx.size(); ++i)
      for (std::size_t j = 0; j < y.idx.size(); ++j) add_to(out, {x.idx[i], y.idx[j]}, cv.val[t] * x.val[i] * y.val[j]);
  }
  return out;
}

MultiTensor TruncatedQuotient::braid(const SparseVec& a, const SparseVec& b) const {
  MultiTensor out;
  for (std::size_t x = 0; x < a.idx.size(); ++x)
    for (std::size_t y = 0; y < b.idx.size(); ++y)
      for (const auto& [key, c] : braid(a.idx[x], b.idx[y])) add_to(out, key, c * a.val[x] * b.val[y]);
  return out;
}

BialgebraCheck TruncatedQuotient::check_bialgebra() const {
  BialgebraCheck out;
  const BraidedSpace& s = space();
  std::size_t d = s.dim(), N = truncation();
  auto pairs_of = [&](std::size_t n1, std::size_t n2, const SparseVec& v, std::size_t split, MultiTensor& acc) {
    std::size_t low = power(d, split);
    for (std::size_t t = 0; t < v.idx.size(); ++t) {
      const SparseVec& a = nf(n1, static_cast<std::uint32_t>(v.idx[t] / low));
      const SparseVec& b = nf(n2, static_cast<std::uint32_t>(v.idx[t] % low));
      for (std::size_t x = 0; x < a.idx.size(); ++x)
        for (std::size_t y = 0; y < b.idx.size(); ++y) add_to(acc, {a.idx[x], b.idx[y]}, v.val[t] * a.val[x] * b.val[y]);
    }
  };
  for (const auto& row : fp_->ideal.basis()) {
    std::vector<std::pair<Word, Scalar>> terms;
    for (std::size_t k = 0; k < row.idx.size(); ++k) terms.emplace_back(idx_.word(row.idx[k]), row.val[k]);
    std::size_t top = idx_.degree(row.leading());
    auto shown = [&] {
      Poly rp(field());
      for (const auto& [w, c] : terms) rp.add(w, c);
      return rp.to_string(s.labels());
    };
    if (out.coideal_ok) {
      MultiTensor acc;
      for (const auto& [w, c] : terms) {
        std::size_t n = w.size();
        SparseVec e = SparseVec::unit(field(), braided::word_index(w, d));
        e.scale(c);
        for (std::size_t p = 1; p < n; ++p) pairs_of(p, n - p, braided::apply_delta(s, p, n - p, e), n - p, acc);
      }
      if (!acc.empty()) {
        out.coideal_ok = false;
        if (out.witness.empty()) out.witness = "coproduct of " + shown() + " leaves J⊗U + U⊗J";
      }
    }
    if (out.braided_ok) {
      for (std::size_t m = 1; top + m <= N && out.braided_ok; ++m) {
        for (std::uint32_t v = 0; v < power(d, m) && out.braided_ok; ++v) {
          MultiTensor left, right;
          for (const auto& [w, c] : terms) {
            std::size_t n = w.size();
            std::uint32_t lw = braided::word_index(w, d);
            if (n == 0) continue;
            SparseVec x = SparseVec::unit(field(), static_cast<std::uint32_t>(lw * power(d, m) + v));
            x.scale(c);
            pairs_of(m, n, braided::apply_ct(s, n, m, x), n, left);
            SparseVec y = SparseVec::unit(field(), static_cast<std::uint32_t>(v * power(d, n) + lw));
            y.scale(c);
            pairs_of(n, m, braided::apply_ct(s, m, n, y), m, right);
          }
          if (!left.empty() || !right.empty()) {
            out.braided_ok = false;
            if (out.witness.empty())
              out.witness = "braiding moves " + shown() + " out of J⊗U + U⊗J";
          }
        }
      }
    }
    if (!out.coideal_ok && !out.braided_ok) break;
  }
  return out;
}

}  // namespace braidkit::envelope
