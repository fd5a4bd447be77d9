#include "braidkit/envelope/bracket.hpp"

#include <algorithm>

namespace braidkit::envelope {

using braided::ipow;
using exact::EchelonBuilder;
using exact::Subspace;

std::string to_string(BracketKind k) {
  switch (k) {
    case BracketKind::trivial: return "trivial";
    case BracketKind::rank1_map: return "rank1_map";
    case BracketKind::lie_flip: return "lie_flip";
    case BracketKind::restricted_flip: return "restricted_flip";
    case BracketKind::custom_tower: return "custom_tower";
  }
  return "?";
}

BracketKind bracket_kind_from_string(const std::string& s) {
  if (s == "trivial") return BracketKind::trivial;
  if (s == "rank1_map") return BracketKind::rank1_map;
  if (s == "lie_flip") return BracketKind::lie_flip;
  if (s == "restricted_flip") return BracketKind::restricted_flip;
  if (s == "custom_tower" || s == "envelope_of_primitives") return BracketKind::custom_tower;
  throw BracketError("unknown bracket kind '" + s + "'");
}

bool is_flip(const BraidedSpace& s) {
  std::size_t d = s.dim();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const auto& im = s.image(a, b);
      if (im.size() != 1 || im[0].first != b * d + a || !im[0].second.is_one()) return false;
    }
  return true;
}

namespace {

std::size_t power(std::size_t d, std::size_t n) { return ipow(d, static_cast<unsigned>(n)); }

// Element of V as a vector of length d; rejects anything else.
SparseVec linear_part(const Poly& p, const BraidedSpace& s, const std::string& what) {
  for (const auto& [w, c] : p.terms())
    if (w.size() != 1) throw BracketError(what + " must be a linear combination of basis vectors");
  return p.component(1, s.dim());
}

class LieTable {
 public:
  LieTable(const BraidedSpace& s, const std::vector<BracketEntry>& entries) : s_(s), d_(s.dim()) {
    const Field& f = s.field();
    table_.assign(d_ * d_, SparseVec());
    std::vector<char> set(d_ * d_, 0);
    for (const auto& e : entries) {
      if (e.left < 0 || e.right < 0 || static_cast<std::size_t>(e.left) >= d_ || static_cast<std::size_t>(e.right) >= d_)
        throw BracketError("bracket entry refers to a letter outside V");
      SparseVec v = linear_part(e.value, s, "bracket value");
      std::size_t i = static_cast<std::size_t>(e.left), j = static_cast<std::size_t>(e.right);
      if (i == j) {
        if (!v.empty()) throw BracketError("bracket of a basis vector with itself must vanish");
        continue;
      }
      SparseVec neg = v;
      neg.negate();
      if ((set[i * d_ + j] && !(table_[i * d_ + j] == v)) || (set[j * d_ + i] && !(table_[j * d_ + i] == neg)))
        throw BracketError("bracket entries violate antisymmetry for (" + s.labels()[i] + ", " + s.labels()[j] + ")");
      table_[i * d_ + j] = v;
      table_[j * d_ + i] = neg;
      set[i * d_ + j] = set[j * d_ + i] = 1;
    }
    (void)f;
  }

  SparseVec bracket(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    for (std::size_t x = 0; x < a.idx.size(); ++x)
      for (std::size_t y = 0; y < b.idx.size(); ++y) out.axpy(a.val[x] * b.val[y], table_[a.idx[x] * d_ + b.idx[y]]);
    return out;
  }
  SparseVec basis(std::size_t i) const { return SparseVec::unit(s_.field(), static_cast<std::uint32_t>(i)); }
  const SparseVec& entry(std::size_t i, std::size_t j) const { return table_[i * d_ + j]; }

  void check_jacobi() const {
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j)
        for (std::size_t k = 0; k < d_; ++k) {
          SparseVec x = bracket(basis(i), bracket(basis(j), basis(k)));
          Scalar one = Scalar::one(s_.field());
          x.axpy(one, bracket(basis(j), bracket(basis(k), basis(i))));
          x.axpy(one, bracket(basis(k), bracket(basis(i), basis(j))));
          if (!x.empty())
            throw BracketError("Jacobi identity fails on (" + s_.labels()[i] + ", " + s_.labels()[j] + ", " + s_.labels()[k] + ")");
        }
  }

 private:
  const BraidedSpace& s_;
  std::size_t d_;
  std::vector<SparseVec> table_;
};

std::vector<Poly> commutator_relations(const BraidedSpace& s, const LieTable& t) {
  const Field& f = s.field();
  std::vector<Poly> rels;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j) {
      Poly r = Poly::monomial(f, {static_cast<int>(i), static_cast<int>(j)}, Scalar::one(f));
      r.add({static_cast<int>(j), static_cast<int>(i)}, -Scalar::one(f));
      r -= Poly::from_vector(f, s.dim(), 1, t.entry(i, j));
      rels.push_back(std::move(r));
    }
  return rels;
}

// Coefficients c with sum c_k vs[k] = target, if any.
std::optional<std::vector<Scalar>> solve_in_span(const Field& f, std::size_t ambient, const std::vector<SparseVec>& vs,
                                                 const SparseVec& target) {
  std::vector<SparseVec> images = vs;
  SparseVec neg = target;
  neg.negate();
  images.push_back(neg);
  Subspace k = exact::kernel_of_map(f, images.size(), ambient, images);
  auto last = static_cast<std::uint32_t>(vs.size());
  for (const auto& row : k.basis()) {
    const Scalar* t = row.find(last);
    if (!t) continue;
    Scalar inv = t->inverse();
    std::vector<Scalar> c(vs.size(), Scalar::zero(f));
    for (std::size_t x = 0; x < row.idx.size(); ++x)
      if (row.idx[x] < last) c[row.idx[x]] = row.val[x] * inv;
    return c;
  }
  return std::nullopt;
}

RelationSet rank1_relations(std::shared_ptr<const BraidedSpace> sp, const BracketSpec& b, std::size_t N) {
  const BraidedSpace& s = *sp;
  const Field& f = s.field();
  std::size_t d = s.dim();
  RelationSet out;
  tower::RankResult rank = tower::combinatorial_rank(sp, N);
  if (!rank.rank || *rank.rank > 1)
    out.notes.push_back("presentation-level only: combinatorial rank is not at most one within the truncation");
  // group by degree
  std::map<std::size_t, std::vector<std::size_t>> by_degree;
  std::vector<SparseVec> elems, values;
  for (std::size_t k = 0; k < b.pairs.size(); ++k) {
    const auto& pr = b.pairs[k];
    if (!pr.element.is_homogeneous() || pr.element.is_zero() || pr.element.degree() < 2)
      throw BracketError("rank1_map element must be nonzero and homogeneous of degree >= 2");
    std::size_t n = pr.element.degree();
    if (n > N) throw BracketError("rank1_map element above the truncation");
    SparseVec e = pr.element.component(n, d);
    for (std::size_t p = 1; p < n; ++p)
      if (!braided::apply_delta(s, p, n - p, e).empty())
        throw BracketError("rank1_map element " + pr.element.to_string(s.labels()) + " is not primitive");
    elems.push_back(e);
    values.push_back(linear_part(pr.value, s, "rank1_map value"));
    by_degree[n].push_back(k);
  }
  for (const auto& [n, ks] : by_degree) {
    std::vector<SparseVec> basis;
    for (auto k : ks) basis.push_back(elems[k]);
    if (Subspace::span(f, power(d, n), basis).dim() != basis.size())
      throw BracketError("rank1_map elements of degree " + std::to_string(n) + " are linearly dependent");
    auto beta = [&](const std::vector<Scalar>& c) {
      SparseVec v;
      for (std::size_t t = 0; t < ks.size(); ++t) v.axpy(c[t], values[ks[t]]);
      return v;
    };
    for (std::size_t t = 0; t < ks.size(); ++t)
      for (std::size_t j = 0; j < d; ++j) {
        // c(e ⊗ x_j) = sum_a x_a ⊗ e_a,  c(x_j ⊗ e) = sum_a e'_a ⊗ x_a
        SparseVec left, right;
        for (std::size_t x = 0; x < elems[ks[t]].idx.size(); ++x) {
          left.push_back(static_cast<std::uint32_t>(elems[ks[t]].idx[x] * d + j), elems[ks[t]].val[x]);
        }
        for (std::size_t x = 0; x < elems[ks[t]].idx.size(); ++x)
          right.push_back(static_cast<std::uint32_t>(j * power(d, n) + elems[ks[t]].idx[x]), elems[ks[t]].val[x]);
        SparseVec cl = braided::apply_ct(s, n, 1, left), cr = braided::apply_ct(s, 1, n, right);
        SparseVec rhs1, rhs2;
        for (std::size_t a = 0; a < d; ++a) {
          SparseVec part1, part2;
          for (std::size_t x = 0; x < cl.idx.size(); ++x)
            if (cl.idx[x] / power(d, n) == a) part1.push_back(static_cast<std::uint32_t>(cl.idx[x] % power(d, n)), cl.val[x]);
          for (std::size_t x = 0; x < cr.idx.size(); ++x)
            if (cr.idx[x] % d == a) part2.push_back(static_cast<std::uint32_t>(cr.idx[x] / d), cr.val[x]);
          for (auto* part : {&part1, &part2}) {
            if (part->empty()) continue;
            auto c = solve_in_span(f, power(d, n), basis, *part);
            if (!c) throw BracketError("rank1_map domain is not stable under the braiding in degree " + std::to_string(n));
            SparseVec bv = beta(*c);
            for (std::size_t y = 0; y < bv.idx.size(); ++y) {
              if (part == &part1)
                rhs1.axpy(bv.val[y], SparseVec::unit(f, static_cast<std::uint32_t>(a * d + bv.idx[y])));
              else
                rhs2.axpy(bv.val[y], SparseVec::unit(f, static_cast<std::uint32_t>(bv.idx[y] * d + a)));
            }
          }
        }
        SparseVec bv = values[ks[t]];
        SparseVec l1, l2;
        for (std::size_t y = 0; y < bv.idx.size(); ++y) {
          l1.axpy(bv.val[y], SparseVec::unit(f, static_cast<std::uint32_t>(bv.idx[y] * d + j)));
          l2.axpy(bv.val[y], SparseVec::unit(f, static_cast<std::uint32_t>(j * d + bv.idx[y])));
        }
        if (!(braided::apply_crossing(s, 0, 2, l1) == rhs1) || !(braided::apply_crossing(s, 0, 2, l2) == rhs2))
          throw BracketError("rank1_map is not compatible with the braiding at " + b.pairs[ks[t]].element.to_string(s.labels()));
      }
  }
  std::vector<Subspace> leads;
  for (std::size_t n = 0; n <= N; ++n) leads.emplace_back(f, power(d, n));
  for (const auto& [n, ks] : by_degree) {
    std::vector<SparseVec> basis;
    for (auto k : ks) basis.push_back(elems[k]);
    leads[n] = Subspace::span(f, power(d, n), basis);
  }
  if (rank.rank && !(tower::ideal_closure(s, leads, N) == rank.stages.back().ideal))
    out.notes.push_back("presentation-level only: the elements do not generate the Nichols ideal");
  for (std::size_t k = 0; k < b.pairs.size(); ++k) {
    Poly r = b.pairs[k].element - b.pairs[k].value;
    out.relations.push_back(r);
    if (!b.pairs[k].value.is_zero()) out.homogeneous = false;
  }
  return out;
}

}  // namespace

std::vector<Poly> minimal_generators(const tower::GradedPresentation& g) {
  const BraidedSpace& s = *g.space;
  std::size_t d = s.dim();
  std::vector<Poly> out;
  for (std::size_t n = 1; n <= g.truncation; ++n) {
    EchelonBuilder b(s.field(), power(d, n));
    std::size_t low = power(d, n - 1);
    for (const auto& r : g.ideal[n - 1].basis())
      for (std::size_t a = 0; a < d; ++a) {
        SparseVec left, right;
        for (std::size_t k = 0; k < r.idx.size(); ++k) {
          left.push_back(static_cast<std::uint32_t>(a * low + r.idx[k]), r.val[k]);
          right.push_back(static_cast<std::uint32_t>(r.idx[k] * d + a), r.val[k]);
        }
        b.insert(left);
        b.insert(right);
      }
    for (const auto& r : g.ideal[n].basis())
      if (b.insert(r)) out.push_back(Poly::from_vector(s.field(), d, n, r));
  }
  return out;
}

RelationSet relations_from_bracket(std::shared_ptr<const BraidedSpace> sp, const BracketSpec& b, std::size_t N) {
  const BraidedSpace& s = *sp;
  const Field& f = s.field();
  RelationSet out;
  switch (b.kind) {
    case BracketKind::trivial: {
      tower::RankResult r = tower::combinatorial_rank(sp, N);
      if (!r.rank) throw BracketError("trivial bracket: tower does not stabilize within the step budget");
      out.relations = minimal_generators(r.stages.back());
      return out;
    }
    case BracketKind::rank1_map:
      return rank1_relations(sp, b, N);
    case BracketKind::lie_flip:
    case BracketKind::restricted_flip: {
      bool restricted = b.kind == BracketKind::restricted_flip;
      if (!is_flip(s)) throw BracketError(to_string(b.kind) + " requires the flip braiding");
      if (!restricted && !f.is_rational()) throw BracketError("lie_flip requires characteristic zero");
      if (restricted && f.is_rational()) throw BracketError("restricted_flip requires a prime field");
      LieTable t(s, b.brackets);
      t.check_jacobi();
      out.relations = commutator_relations(s, t);
      out.homogeneous = std::all_of(out.relations.begin(), out.relations.end(), [](const Poly& p) { return p.is_homogeneous(); });
      if (restricted) {
        std::size_t p = f.characteristic();
        if (!b.p_map.empty() && b.p_map.size() != s.dim()) throw BracketError("p-map needs one value per basis vector");
        for (std::size_t i = 0; i < s.dim(); ++i) {
          SparseVec xp = b.p_map.empty() ? SparseVec() : linear_part(b.p_map[i], s, "p-map value");
          for (std::size_t k = 0; k < s.dim(); ++k) {
            SparseVec lhs = t.bracket(xp, t.basis(k));
            SparseVec rhs = t.basis(k);
            for (std::size_t e = 0; e < p; ++e) rhs = t.bracket(t.basis(i), rhs);
            if (!(lhs == rhs))
              throw BracketError("p-map fails ad(x^[p]) = (ad x)^p at (" + s.labels()[i] + ", " + s.labels()[k] + ")");
          }
          Poly r = Poly::monomial(f, braided::Word(p, static_cast<int>(i)), Scalar::one(f));
          r -= Poly::from_vector(f, s.dim(), 1, xp);
          if (!r.is_homogeneous()) out.homogeneous = false;
          if (p > N) out.notes.push_back("p-th power relation lies above the truncation");
          out.relations.push_back(std::move(r));
        }
      }
      return out;
    }
    case BracketKind::custom_tower:
      throw BracketError("custom_tower brackets are built through tower_envelope");
  }
  return out;
}

}  // namespace braidkit::envelope
