#include "braidkit/envelope/envelope_tower.hpp"

#include "braidkit/envelope/bracket.hpp"

namespace braidkit::envelope {

using exact::EchelonBuilder;

EnvelopeRule trivial_rule() {
  return {"trivial",
          [](const TruncatedQuotient& u, const std::vector<SparseVec>& prims) {
            std::vector<SparseVec> out;
            for (const auto& p : prims) out.push_back(u.nf(u.to_poly(p).part(1)));
            return out;
          },
          false};
}

EnvelopeRule relation_rule(std::shared_ptr<const BraidedSpace> s, const std::vector<Poly>& relations, std::size_t N,
                           const FilteredOptions& opt) {
  auto fp = std::make_shared<FilteredPresentation>(filtered_ideal(s, relations, N, opt));
  auto q = std::make_shared<TruncatedQuotient>(*fp);
  if (!q->degree_one_injective()) throw BracketError("V does not embed into the envelope");
  // rows (nf(x_i) | e_i): reducing (r | 0) leaves (0 | -coords) when r lies in the image of V
  std::size_t d = s->dim(), D = q->dim();
  EchelonBuilder aug(s->field(), D + d);
  for (std::size_t i = 0; i < d; ++i) {
    SparseVec row = q->nf(Word{static_cast<int>(i)});
    row.push_back(static_cast<std::uint32_t>(D + i), Scalar::one(s->field()));
    aug.insert(row);
  }
  auto solver = std::make_shared<Subspace>(aug.finish());
  return {"relations",
          [fp, q, solver, D](const TruncatedQuotient& u, const std::vector<SparseVec>& prims) {
            std::vector<SparseVec> out;
            for (const auto& p : prims) {
              SparseVec r = solver->reduce(q->nf(u.to_poly(p)));
              if (!r.empty() && r.idx[0] < D)
                throw BracketError("bracket of " + u.to_string(p) + " does not lie in V");
              Poly b(u.field());
              for (std::size_t k = 0; k < r.idx.size(); ++k)
                b += Poly::monomial(u.field(), Word{static_cast<int>(r.idx[k] - D)}, -r.val[k]);
              out.push_back(u.nf(b));
            }
            return out;
          },
          false};
}

EnvelopeRule primitives_identity_rule() {
  return {"primitives_identity",
          [](const TruncatedQuotient&, const std::vector<SparseVec>& prims) { return prims; }, true};
}

bool EnvelopeTower::ok() const {
  for (const auto& s : stages)
    if (!s.ok()) return false;
  return stabilized_at.has_value();
}

namespace {

// Coordinates in the given basis, or nullopt.
struct Coords {
  Subspace span;
  std::vector<SparseVec> basis;
  std::size_t dim;
  Coords(const Field& f, std::size_t ambient, const std::vector<SparseVec>& b) : span(f, ambient), basis(b), dim(ambient) {
    EchelonBuilder aug(f, ambient + b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      SparseVec row = b[i];
      row.push_back(static_cast<std::uint32_t>(ambient + i), Scalar::one(f));
      aug.insert(row);
    }
    span = aug.finish();
  }
  std::optional<std::vector<std::pair<std::size_t, Scalar>>> of(const SparseVec& v) const {
    SparseVec r = span.reduce(v);
    if (!r.empty() && r.idx[0] < dim) return std::nullopt;
    std::vector<std::pair<std::size_t, Scalar>> out;
    for (std::size_t k = 0; k < r.idx.size(); ++k) out.emplace_back(r.idx[k] - dim, -r.val[k]);
    return out;
  }
};

SparseVec combine(const std::vector<std::pair<std::size_t, Scalar>>& c, const std::vector<SparseVec>& vs) {
  SparseVec out;
  for (const auto& [i, a] : c) out.axpy(a, vs[i]);
  return out;
}

// Apply f to the factor `side` (0 or 1) of t; returns nullopt if a slice is outside P.
std::optional<MultiTensor> apply_on_factor(const MultiTensor& t, int side, const Coords& p, const std::vector<SparseVec>& ib) {
  std::map<std::uint32_t, SparseVec> slices;
  for (const auto& [key, v] : t) slices[key[1 - side]].push_back(key[side], v);
  MultiTensor out;
  for (const auto& [other, w] : slices) {
    auto c = p.of(w);
    if (!c) return std::nullopt;
    SparseVec img = combine(*c, ib);
    for (std::size_t k = 0; k < img.idx.size(); ++k) {
      std::vector<std::uint32_t> key(2);
      key[side] = img.idx[k];
      key[1 - side] = other;
      add_to(out, key, img.val[k]);
    }
  }
  return out;
}

}  // namespace

EnvelopeTower tower_envelope(std::shared_ptr<const BraidedSpace> s, const EnvelopeRule& rule, std::size_t N,
                             const FilteredOptions& opt, std::optional<std::size_t> max_stages) {
  std::size_t limit = max_stages.value_or(N);
  const Field& f = s->field();
  EnvelopeTower out;
  out.rule = rule.name;
  std::vector<Poly> rels;
  FilteredPresentation fp = filtered_ideal(s, rels, N, opt);
  if (rule.generated_by_primitives) fp.generators = Generators::primitives;
  for (std::size_t n = 0;; ++n) {
    out.presentations.push_back(fp);
    Analysis an(fp);
    const TruncatedQuotient& q = an.quotient();
    StageReport st;
    st.stage = n;
    st.filtration_dims = fp.filtration_dims();
    std::vector<SparseVec> P = an.coradical().primitives.basis();
    st.primitive_dim = P.size();
    std::vector<SparseVec> ib = rule.ib(q, P);
    Coords pc(f, q.dim(), P);

    std::vector<SparseVec> V;
    if (rule.generated_by_primitives) {
      V = P;
    } else {
      for (std::size_t i = 0; i < s->dim(); ++i) V.push_back(q.nf(Word{static_cast<int>(i)}));
      st.i_injective = q.degree_one_injective();
      if (!st.i_injective) st.notes.push_back("i is not injective on V");
    }
    Subspace vspan = Subspace::span(f, q.dim(), V);
    st.v_dim = vspan.dim();

    for (const auto& v : V) {
      auto c = pc.of(v);
      if (!c) {
        st.section_ok = false;
        st.notes.push_back("image of V is not primitive");
        break;
      }
      if (combine(*c, ib) != v) {
        st.section_ok = false;
        st.notes.push_back("b i differs from Id at " + q.to_string(v));
        break;
      }
    }

    for (std::size_t a = 0; a < P.size() && st.bracket_ok; ++a)
      for (const auto& v : vspan.basis()) {
        if (q.degree(P[a]) + q.degree(v) > N) continue;
        auto r1 = apply_on_factor(q.braid(P[a], v), 1, pc, ib);
        auto r2 = apply_on_factor(q.braid(v, P[a]), 0, pc, ib);
        if (!r1 || !r2 || *r1 != q.braid(ib[a], v) || *r2 != q.braid(v, ib[a])) {
          st.bracket_ok = false;
          st.notes.push_back("bracket compatibility fails at " + q.to_string(P[a]));
          break;
        }
      }

    // ker b in U coordinates
    Subspace kb = exact::kernel_of_map(f, P.size(), q.dim(), ib);
    std::vector<SparseVec> kerb;
    for (const auto& k : kb.basis()) {
      std::vector<std::pair<std::size_t, Scalar>> c;
      for (std::size_t t = 0; t < k.idx.size(); ++t) c.emplace_back(k.idx[t], k.val[t]);
      kerb.push_back(combine(c, P));
    }
    Subspace ks = Subspace::span(f, q.dim(), kerb);
    if (!(sum(ks, vspan).dim() == P.size() && ks.dim() + vspan.dim() == P.size())) {
      st.split_ok = false;
      st.notes.push_back("P is not ker b ⊕ V");
    }

    EchelonBuilder fresh(f, q.dim());
    std::vector<SparseVec> diffs;
    std::vector<Poly> new_rels;
    for (std::size_t a = 0; a < P.size(); ++a) {
      SparseVec r = P[a];
      r.axpy(Scalar(f, -1), ib[a]);
      diffs.push_back(r);
      if (!r.empty() && fresh.insert(r)) new_rels.push_back(q.to_poly(r));
    }
    if (!(Subspace::span(f, q.dim(), diffs) == ks)) {
      st.kernel_ok = false;
      st.notes.push_back("Im(Id - i b) differs from ker b");
    }
    st.new_relations = new_rels.size();

    if (new_rels.empty()) {
      out.stabilized_at = n;
      out.stages.push_back(std::move(st));
      break;
    }
    if (n == limit) {
      st.notes.push_back("stage limit reached");
      out.stages.push_back(std::move(st));
      break;
    }
    rels.insert(rels.end(), new_rels.begin(), new_rels.end());
    FilteredPresentation next = filtered_ideal(s, rels, N, opt);
    next.generators = fp.generators;
    {
      TruncatedQuotient qn(next);
      std::vector<SparseVec> images;
      for (const auto& p : P) images.push_back(qn.nf(q.to_poly(p)));
      Subspace w = exact::kernel_of_map(f, P.size(), qn.dim(), images);
      std::vector<SparseVec> wv;
      for (const auto& k : w.basis()) {
        std::vector<std::pair<std::size_t, Scalar>> c;
        for (std::size_t t = 0; t < k.idx.size(); ++t) c.emplace_back(k.idx[t], k.val[t]);
        wv.push_back(combine(c, P));
      }
      if (!(Subspace::span(f, q.dim(), wv) == ks)) {
        st.kernel_ok = false;
        st.notes.push_back("ker(π) ∩ P differs from ker b");
      }
    }
    out.stages.push_back(std::move(st));
    fp = std::move(next);
  }
  return out;
}

KhaCosymReport khacosym_consistency(std::shared_ptr<const BraidedSpace> s, std::size_t N,
                                    std::optional<std::size_t> max_steps) {
  KhaCosymReport r;
  tower::RankResult rr = tower::combinatorial_rank(s, N, max_steps);
  r.rank = rr.rank;
  for (std::size_t n = 0; n < rr.stages.size(); ++n) {
    Analysis an(from_graded(rr.stages[n]));
    CosymReport c = an.cosymmetric_check();
    r.stages.push_back({n, c.cosymmetric, c.witness});
    if (c.cosymmetric && (!r.rank || *r.rank > n + 1)) {
      r.consistent = false;
      r.diagnostic = "stage " + std::to_string(n) + " is cosymmetric but the tower has not stabilized by stage " +
                     std::to_string(n + 1);
    }
  }
  return r;
}

}  // namespace braidkit::envelope
