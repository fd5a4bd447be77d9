#include "braidkit/envelope/filtered.hpp"

#include <algorithm>

namespace braidkit::envelope {

using braided::ipow;
using exact::EchelonBuilder;

std::vector<std::size_t> FilteredPresentation::ideal_dims() const {
  FilteredIndex idx = index();
  std::vector<std::size_t> out(truncation + 1, 0);
  for (auto p : ideal.pivots())
    for (std::size_t n = idx.degree(p); n <= truncation; ++n) ++out[n];
  return out;
}

std::vector<std::size_t> FilteredPresentation::filtration_dims() const {
  auto f = ideal_dims();
  std::vector<std::size_t> out;
  std::size_t total = 0;
  for (std::size_t n = 0; n <= truncation; ++n) {
    total += ipow(space->dim(), static_cast<unsigned>(n));
    out.push_back(total - f[n]);
  }
  return out;
}

namespace {

SparseVec to_columns(std::vector<std::pair<std::uint32_t, Scalar>> items) {
  std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec vec;
  for (auto& [i, c] : items) vec.push_back(i, c);
  return vec;
}

// Generators of top degree t given the closure b up to t - 1: the relations of degree t and
// x·row, row·x for rows of degree t - 1. Products w1 r w2 of degree t factor through these.
std::vector<SparseVec> products_of_degree(const BraidedSpace& s, const FilteredIndex& idx, const EchelonBuilder& b,
                                          const std::vector<Poly>& rels, std::size_t t) {
  std::vector<SparseVec> out;
  for (const auto& r : rels) {
    if (r.is_zero() || r.degree() != t) continue;
    std::vector<std::pair<std::uint32_t, Scalar>> items;
    for (const auto& [w, c] : r.terms()) items.emplace_back(idx.column(w), c);
    out.push_back(to_columns(std::move(items)));
  }
  if (t == 0) return out;
  for (const auto& row : b.rows()) {
    if (idx.degree(row.leading()) != t - 1) continue;
    for (std::size_t x = 0; x < s.dim(); ++x)
      for (int side = 0; side < 2; ++side) {
        std::vector<std::pair<std::uint32_t, Scalar>> items;
        for (std::size_t k = 0; k < row.idx.size(); ++k) {
          Word w = idx.word(row.idx[k]);
          if (side == 0)
            w.insert(w.begin(), static_cast<int>(x));
          else
            w.push_back(static_cast<int>(x));
          items.emplace_back(idx.column(w), row.val[k]);
        }
        out.push_back(to_columns(std::move(items)));
      }
  }
  return out;
}

// Rows of the builder with pivot degree <= N, shifted to FilteredIndex(d, N) columns.
Subspace snapshot(const EchelonBuilder& b, const FilteredIndex& big, std::size_t N, const exact::Field& f) {
  std::uint32_t shift = big.begin(N);
  std::vector<SparseVec> rows;
  for (auto& r : b.rows()) {
    if (r.leading() < shift) continue;
    SparseVec v = r;
    for (auto& i : v.idx) i -= shift;
    rows.push_back(std::move(v));
  }
  return Subspace::from_rref(f, big.size() - shift, std::move(rows));
}

void check_relations(const BraidedSpace& s, const std::vector<Poly>& rels) {
  for (const auto& r : rels) {
    if (!(r.field() == s.field())) throw exact::FieldMismatch("relation over " + r.field().name());
    for (const auto& [w, c] : r.terms())
      for (int l : w)
        if (l < 0 || static_cast<std::size_t>(l) >= s.dim()) throw std::invalid_argument("relation uses a letter outside V");
  }
}

}  // namespace

Subspace filtered_ideal_at(const BraidedSpace& s, const std::vector<Poly>& relations, std::size_t N, std::size_t h,
                           kernels::Exec exec) {
  check_relations(s, relations);
  std::size_t M = N + h;
  FilteredIndex big(s.dim(), M);
  EchelonBuilder b(s.field(), big.size());
  for (std::size_t t = 0; t <= M; ++t) kernels::insert_batch(b, products_of_degree(s, big, b, relations, t), exec);
  return snapshot(b, big, N, s.field());
}

FilteredPresentation filtered_ideal(std::shared_ptr<const BraidedSpace> s, const std::vector<Poly>& relations,
                                    std::size_t N, const FilteredOptions& opt) {
  check_relations(*s, relations);
  if (opt.max_headroom < opt.headroom) throw std::invalid_argument("max headroom below headroom");
  std::size_t M = N + opt.max_headroom + 1;
  FilteredIndex big(s->dim(), M);
  EchelonBuilder b(s->field(), big.size());
  FilteredPresentation out;
  out.truncation = N;
  out.headroom = opt.headroom;
  out.relations = relations;
  out.homogeneous = std::all_of(relations.begin(), relations.end(), [](const Poly& r) { return r.is_homogeneous(); });
  std::optional<Subspace> prev;
  for (std::size_t t = 0; t <= M; ++t) {
    kernels::insert_batch(b, products_of_degree(*s, big, b, relations, t), opt.exec);
    if (t < N + opt.headroom) continue;
    Subspace cur = snapshot(b, big, N, s->field());
    if (prev && *prev == cur) {
      out.headroom_used = t - N - 1;
      out.ideal = std::move(cur);
      out.space = std::move(s);
      return out;
    }
    prev = std::move(cur);
  }
  throw HeadroomError("filtered ideal not stable up to degree " + std::to_string(N) + " for headroom up to " +
                      std::to_string(opt.max_headroom) + "; raise --headroom");
}

FilteredPresentation from_graded(const tower::GradedPresentation& g) {
  FilteredPresentation out;
  out.space = g.space;
  out.truncation = g.truncation;
  out.homogeneous = true;
  FilteredIndex idx(g.space->dim(), g.truncation);
  std::vector<SparseVec> rows;
  for (std::size_t n = 0; n <= g.truncation; ++n)
    for (const auto& r : g.ideal[n].basis()) {
      std::vector<std::pair<std::uint32_t, Scalar>> items;
      for (std::size_t k = 0; k < r.idx.size(); ++k) items.emplace_back(idx.column(n, r.idx[k]), r.val[k]);
      std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      SparseVec v;
      for (auto& [i, c] : items) v.push_back(i, c);
      rows.push_back(v);
      out.relations.push_back(Poly::from_vector(g.space->field(), g.space->dim(), n, r));
    }
  out.ideal = Subspace::span(g.space->field(), idx.size(), rows);
  return out;
}

}  // namespace braidkit::envelope
