#include "braidkit/tower/tower.hpp"

#include <algorithm>

namespace braidkit::tower {

using braided::ipow;
using braided::word_at;
using braided::word_string;
using exact::EchelonBuilder;

namespace {

std::size_t power(std::size_t d, std::size_t n) { return ipow(d, static_cast<unsigned>(n)); }

std::string vec_string(const BraidedSpace& s, std::size_t n, const SparseVec& v) {
  std::string out;
  for (std::size_t k = 0; k < v.idx.size() && k < 6; ++k) {
    if (k) out += " + ";
    out += "(" + v.val[k].to_string() + ") " + word_string(word_at(v.idx[k], s.dim(), n), s.labels());
  }
  if (v.idx.size() > 6) out += " + ...";
  return out;
}

}  // namespace

std::vector<std::size_t> GradedPresentation::quotient_dims() const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= truncation; ++n) out.push_back(power(space->dim(), n) - ideal[n].dim());
  return out;
}

bool GradedPresentation::same_ideal(const GradedPresentation& o) const {
  return truncation == o.truncation && ideal == o.ideal;
}

QuotientForms::QuotientForms(const GradedPresentation& g) : d_(g.space->dim()), field_(g.space->field()) {
  for (std::size_t p = 0; p <= g.truncation; ++p) {
    const Subspace& I = g.ideal[p];
    std::size_t size = power(d_, p);
    std::vector<std::int64_t> coord(size, -1);
    std::vector<char> pivot(size, 0);
    for (auto c : I.pivots()) pivot[c] = 1;
    std::vector<std::uint32_t> standard;
    for (std::size_t w = 0; w < size; ++w)
      if (!pivot[w]) {
        coord[w] = static_cast<std::int64_t>(standard.size());
        standard.push_back(static_cast<std::uint32_t>(w));
      }
    std::vector<SparseVec> nf(size);
    for (std::size_t w = 0; w < size; ++w) {
      SparseVec r = I.reduce(SparseVec::unit(field_, static_cast<std::uint32_t>(w)));
      SparseVec q;
      for (std::size_t k = 0; k < r.idx.size(); ++k) q.push_back(static_cast<std::uint32_t>(coord[r.idx[k]]), r.val[k]);
      nf[w] = std::move(q);
    }
    dims_.push_back(standard.size());
    nf_.push_back(std::move(nf));
    standard_.push_back(std::move(standard));
  }
}

SparseVec QuotientForms::nf2(std::size_t p, std::size_t q, const SparseVec& v) const {
  std::size_t low = power(d_, q);
  std::size_t dq = dims_[q];
  std::vector<std::pair<std::uint32_t, Scalar>> terms;
  for (std::size_t k = 0; k < v.idx.size(); ++k) {
    const SparseVec& a = nf_[p][v.idx[k] / low];
    const SparseVec& b = nf_[q][v.idx[k] % low];
    for (std::size_t x = 0; x < a.idx.size(); ++x) {
      Scalar ax = v.val[k] * a.val[x];
      for (std::size_t y = 0; y < b.idx.size(); ++y)
        terms.emplace_back(static_cast<std::uint32_t>(a.idx[x] * dq + b.idx[y]), ax * b.val[y]);
    }
  }
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  for (std::size_t k = 0; k < terms.size();) {
    std::uint32_t at = terms[k].first;
    Scalar s = std::move(terms[k].second);
    for (++k; k < terms.size() && terms[k].first == at; ++k) s += terms[k].second;
    if (!s.is_zero()) out.push_back(at, std::move(s));
  }
  return out;
}

GradedPresentation free_presentation(std::shared_ptr<const BraidedSpace> s, std::size_t N) {
  GradedPresentation g;
  g.truncation = N;
  for (std::size_t n = 0; n <= N; ++n) g.ideal.emplace_back(s->field(), power(s->dim(), n));
  g.space = std::move(s);
  return g;
}

Subspace primitives_of_degree(const GradedPresentation& g, std::size_t n, kernels::Exec exec) {
  if (n > g.truncation) throw std::out_of_range("degree above truncation");
  const BraidedSpace& s = *g.space;
  QuotientForms qf(g);
  std::vector<std::size_t> offset(n + 1, 0);
  std::size_t target = 0;
  for (std::size_t p = 1; p < n; ++p) {
    offset[p] = target;
    target += qf.dim(p) * qf.dim(n - p);
  }
  std::size_t size = power(s.dim(), n);
  auto images = kernels::build_columns(
      size,
      [&](std::size_t w) {
        SparseVec out;
        SparseVec e = SparseVec::unit(s.field(), static_cast<std::uint32_t>(w));
        for (std::size_t p = 1; p < n; ++p) {
          SparseVec part = qf.nf2(p, n - p, braided::apply_delta(s, p, n - p, e));
          for (std::size_t k = 0; k < part.idx.size(); ++k)
            out.push_back(static_cast<std::uint32_t>(offset[p] + part.idx[k]), part.val[k]);
        }
        return out;
      },
      exec);
  return exact::kernel_of_map(s.field(), size, target, images);
}

std::vector<Subspace> ideal_closure(const BraidedSpace& s, const std::vector<Subspace>& gens, std::size_t N,
                                    kernels::Exec exec) {
  std::size_t d = s.dim();
  std::vector<Subspace> out;
  for (std::size_t m = 0; m <= N; ++m) {
    std::size_t size = power(d, m);
    EchelonBuilder b(s.field(), size);
    std::vector<SparseVec> cand;
    if (m < gens.size()) cand = gens[m].basis();
    if (m > 0) {
      std::size_t low = power(d, m - 1);
      for (const auto& r : out[m - 1].basis())
        for (std::size_t a = 0; a < d; ++a) {
          SparseVec left, right;
          for (std::size_t k = 0; k < r.idx.size(); ++k) {
            left.push_back(static_cast<std::uint32_t>(a * low + r.idx[k]), r.val[k]);
            right.push_back(static_cast<std::uint32_t>(r.idx[k] * d + a), r.val[k]);
          }
          cand.push_back(std::move(left));
          cand.push_back(std::move(right));
        }
    }
    std::sort(cand.begin(), cand.end(), [](const SparseVec& x, const SparseVec& y) { return x.idx < y.idx; });
    kernels::insert_batch(b, cand, exec);
    out.push_back(b.finish());
  }
  return out;
}

Verification verify(const GradedPresentation& g) {
  Verification v;
  const BraidedSpace& s = *g.space;
  std::size_t d = s.dim(), N = g.truncation;
  auto fail = [&](bool& flag, const char* kind, std::size_t deg, std::string detail) {
    flag = false;
    if (!v.first) v.first = Violation{kind, deg, std::move(detail)};
  };
  for (std::size_t m = 1; m <= N && v.ideal_ok; ++m) {
    std::size_t low = power(d, m - 1);
    for (const auto& r : g.ideal[m - 1].basis()) {
      for (std::size_t a = 0; a < d && v.ideal_ok; ++a) {
        SparseVec left, right;
        for (std::size_t k = 0; k < r.idx.size(); ++k) {
          left.push_back(static_cast<std::uint32_t>(a * low + r.idx[k]), r.val[k]);
          right.push_back(static_cast<std::uint32_t>(r.idx[k] * d + a), r.val[k]);
        }
        if (!g.ideal[m].contains(left) || !g.ideal[m].contains(right))
          fail(v.ideal_ok, "ideal", m, "multiple of " + vec_string(s, m - 1, r) + " escapes");
      }
      if (!v.ideal_ok) break;
    }
  }
  QuotientForms qf(g);
  for (std::size_t n = 2; n <= N && v.coideal_ok; ++n)
    for (const auto& t : g.ideal[n].basis()) {
      for (std::size_t p = 1; p < n; ++p)
        if (!qf.nf2(p, n - p, braided::apply_delta(s, p, n - p, t)).empty()) {
          fail(v.coideal_ok, "coideal", n, "coproduct of " + vec_string(s, n, t) + " leaves I⊗T + T⊗I");
          break;
        }
      if (!v.coideal_ok) break;
    }
  for (std::size_t n = 1; n < N && v.braiding_ok; ++n)
    for (std::size_t m = 1; n + m <= N && v.braiding_ok; ++m) {
      // c(I_n ⊗ V^m) and c(V^n ⊗ I_m)
      std::size_t dm = power(d, m), dn = power(d, n);
      for (const auto& t : g.ideal[n].basis()) {
        for (std::size_t w = 0; w < dm; ++w) {
          SparseVec x;
          for (std::size_t k = 0; k < t.idx.size(); ++k) x.push_back(static_cast<std::uint32_t>(t.idx[k] * dm + w), t.val[k]);
          if (!qf.nf2(m, n, braided::apply_ct(s, n, m, x)).empty()) {
            fail(v.braiding_ok, "braiding", n + m, "c(" + vec_string(s, n, t) + " ⊗ word) leaves the ideal");
            break;
          }
        }
        if (!v.braiding_ok) break;
      }
      for (const auto& t : g.ideal[m].basis()) {
        if (!v.braiding_ok) break;
        for (std::size_t w = 0; w < dn; ++w) {
          SparseVec x;
          for (std::size_t k = 0; k < t.idx.size(); ++k) x.push_back(static_cast<std::uint32_t>(w * dm + t.idx[k]), t.val[k]);
          if (!qf.nf2(m, n, braided::apply_ct(s, n, m, x)).empty()) {
            fail(v.braiding_ok, "braiding", n + m, "c(word ⊗ " + vec_string(s, m, t) + ") leaves the ideal");
            break;
          }
        }
      }
    }
  return v;
}

GradedPresentation tower_step(const GradedPresentation& g, kernels::Exec exec, std::vector<std::size_t>* fresh) {
  std::vector<Subspace> gens;
  for (std::size_t n = 0; n <= g.truncation; ++n)
    gens.push_back(n >= 2 ? primitives_of_degree(g, n, exec) : g.ideal[n]);
  if (fresh) {
    fresh->clear();
    for (std::size_t n = 0; n <= g.truncation; ++n) fresh->push_back(gens[n].dim() - g.ideal[n].dim());
  }
  GradedPresentation next;
  next.space = g.space;
  next.truncation = g.truncation;
  next.ideal = ideal_closure(*g.space, gens, g.truncation, exec);
  next.verified = verify(next);
  if (!next.verified.ok()) throw VerificationError(*next.verified.first);
  return next;
}

RankResult combinatorial_rank(std::shared_ptr<const BraidedSpace> s, std::size_t N, std::optional<std::size_t> max_steps) {
  RankResult r;
  r.truncation = N;
  r.max_steps = max_steps.value_or(N);
  r.stages.push_back(free_presentation(std::move(s), N));
  for (std::size_t k = 0; k <= r.max_steps; ++k) {
    std::vector<std::size_t> fresh;
    GradedPresentation next = tower_step(r.stages.back(), kernels::Exec::parallel, &fresh);
    r.new_primitives.push_back(fresh);
    if (next.same_ideal(r.stages.back())) {
      r.rank = k;
      break;
    }
    r.stages.push_back(std::move(next));
  }
  return r;
}

std::vector<std::size_t> nichols_dims_tower(std::shared_ptr<const BraidedSpace> s, std::size_t N,
                                            std::optional<std::size_t> max_steps) {
  RankResult r = combinatorial_rank(std::move(s), N, max_steps);
  if (!r.rank) throw StabilizationError("tower did not stabilize within " + std::to_string(r.max_steps) + " steps");
  return r.stages.back().quotient_dims();
}

std::vector<std::size_t> nichols_dims_symmetrizer(const BraidedSpace& s, std::size_t N, std::size_t factorial_budget) {
  std::vector<std::size_t> out{1};
  for (std::size_t n = 1; n <= N; ++n) out.push_back(braided::quantum_symmetrizer(s, n, factorial_budget).rank());
  return out;
}

}  // namespace braidkit::tower
