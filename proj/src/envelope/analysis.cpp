#include "braidkit/envelope/analysis.hpp"

#include <algorithm>

#include "braidkit/braided/operators.hpp"

namespace braidkit::envelope {

using exact::EchelonBuilder;

namespace {

std::string tuple_string(const std::vector<std::uint32_t>& t) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + std::to_string(t[k]);
  return s + ")";
}

}  // namespace

std::uint32_t NicholsTruncation::index(std::size_t m, const std::vector<std::uint32_t>& t) const {
  const auto& ts = tuples.at(m);
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it == ts.end() || *it != t) throw std::out_of_range("tuple " + tuple_string(t) + " outside the truncation");
  return static_cast<std::uint32_t>(it - ts.begin());
}

Analysis::Analysis(FilteredPresentation fp, AnalysisOptions opt) : fp_(std::move(fp)), opt_(opt), q_(fp_) {}

const CoradicalData& Analysis::coradical() {
  if (corad_) return *corad_;
  const Field& f = q_.field();
  std::size_t N = q_.truncation(), dim = q_.dim(), plus = dim - 1;
  CoradicalData c;
  c.truncation = N;
  c.validity = N > opt_.coradical_margin ? N - opt_.coradical_margin : 0;
  SparseVec unit = SparseVec::unit(f, q_.unit());
  c.levels.push_back(Subspace::span(f, dim, {unit}));
  for (std::size_t m = 1; m <= N; ++m) {
    // kernel of the iterated reduced coproduct into (U^+)^{⊗(m+1)}
    std::map<std::vector<std::uint32_t>, std::uint32_t> keys;
    std::vector<const MultiTensor*> imgs;
    for (std::uint32_t k = 0; k < plus; ++k) {
      imgs.push_back(&q_.iterated(k, m + 1));
      for (const auto& [key, v] : *imgs.back()) keys.emplace(key, 0);
    }
    std::uint32_t next = 0;
    for (auto& [key, v] : keys) v = next++;
    std::vector<SparseVec> images;
    for (const auto* t : imgs) {
      std::vector<std::pair<std::uint32_t, Scalar>> items;
      for (const auto& [key, v] : *t) items.emplace_back(keys.at(key), v);
      std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      SparseVec sv;
      for (auto& [i, v] : items) sv.push_back(i, v);
      images.push_back(std::move(sv));
    }
    Subspace ker = exact::kernel_of_map(f, plus, keys.size(), images);
    std::vector<SparseVec> rows = ker.basis();
    rows.push_back(unit);
    c.levels.push_back(Subspace::span(f, dim, rows));
    if (m == 1) c.primitives = Subspace::span(f, dim, ker.basis());
  }
  c.gr_dims.push_back(1);
  for (std::size_t m = 1; m <= N; ++m) c.gr_dims.push_back(c.levels[m].dim() - c.levels[m - 1].dim());
  corad_ = std::move(c);
  return *corad_;
}

GeneratorSpace Analysis::make_space(std::vector<SparseVec> basis, const std::string& what) {
  const Field& f = q_.field();
  GeneratorSpace g;
  g.basis = Subspace::span(f, q_.dim(), basis).basis();
  for (const auto& b : g.basis) {
    g.pivots.push_back(b.leading());
    g.degrees.push_back(q_.degree(b));
  }
  std::map<std::uint32_t, std::uint32_t> of_pivot;
  for (std::uint32_t i = 0; i < g.pivots.size(); ++i) of_pivot[g.pivots[i]] = i;
  std::size_t N = q_.truncation();
  for (std::uint32_t i = 0; i < g.dim(); ++i)
    for (std::uint32_t j = 0; j < g.dim(); ++j) {
      if (g.degrees[i] + g.degrees[j] > N) continue;
      MultiTensor c = q_.braid(g.basis[i], g.basis[j]);
      MultiTensor coords, rebuilt;
      for (const auto& [key, v] : c) {
        auto a = of_pivot.find(key[0]), b = of_pivot.find(key[1]);
        if (a == of_pivot.end() || b == of_pivot.end()) continue;
        add_to(coords, {a->second, b->second}, v);
      }
      for (const auto& [key, v] : coords) {
        const SparseVec& x = g.basis[key[0]];
        const SparseVec& y = g.basis[key[1]];
        for (std::size_t s = 0; s < x.idx.size(); ++s)
          for (std::size_t t = 0; t < y.idx.size(); ++t) add_to(rebuilt, {x.idx[s], y.idx[t]}, v * x.val[s] * y.val[t]);
      }
      if (rebuilt != c)
        throw PresentationError(what + " is not stable under the braiding at (" + q_.to_string(g.basis[i]) + ", " +
                                q_.to_string(g.basis[j]) + ")");
      g.braiding[{i, j}] = std::move(coords);
    }
  return g;
}

const GeneratorSpace& Analysis::generators() {
  if (gens_) return *gens_;
  if (fp_.generators == Generators::primitives) {
    gens_ = primitive_space();
    return *gens_;
  }
  std::vector<SparseVec> basis;
  for (std::size_t i = 0; i < q_.space().dim(); ++i) basis.push_back(q_.nf(Word{static_cast<int>(i)}));
  gens_ = make_space(basis, "the image of V");
  return *gens_;
}

const GeneratorSpace& Analysis::primitive_space() {
  if (!prims_) prims_ = make_space(coradical().primitives.basis(), "P(U)");
  return *prims_;
}

namespace {

void cross(const GeneratorSpace& g, std::size_t k, const MultiTensor& in, MultiTensor& out) {
  out.clear();
  for (const auto& [key, v] : in) {
    auto it = g.braiding.find({key[k], key[k + 1]});
    if (it == g.braiding.end()) throw std::logic_error("braiding outside the truncation");
    for (const auto& [pair, c] : it->second) {
      auto nk = key;
      nk[k] = pair[0];
      nk[k + 1] = pair[1];
      add_to(out, nk, v * c);
    }
  }
}

MultiTensor symmetrize(const GeneratorSpace& g, std::size_t k, const MultiTensor& v) {
  if (k <= 1 || v.empty()) return v;
  MultiTensor t = v, x, y;
  for (std::size_t first = k - 1; first-- > 0;) {
    x = v;
    for (std::size_t c = first; c <= k - 2; ++c) {
      cross(g, c, x, y);
      std::swap(x, y);
    }
    for (const auto& [key, c] : x) add_to(t, key, c);
  }
  return symmetrize(g, k - 1, t);
}

void enumerate(const GeneratorSpace& g, std::size_t m, std::size_t budget, std::vector<std::uint32_t>& cur,
               std::vector<std::vector<std::uint32_t>>& out) {
  if (cur.size() == m) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t i = 0; i < g.dim(); ++i) {
    std::size_t rest = m - cur.size() - 1;  // each further factor has degree >= 1
    if (g.degrees[i] + rest > budget) continue;
    cur.push_back(i);
    enumerate(g, m, budget - g.degrees[i], cur, out);
    cur.pop_back();
  }
}

}  // namespace

NicholsTruncation Analysis::make_nichols(const GeneratorSpace& g) {
  const Field& f = q_.field();
  std::size_t N = q_.truncation();
  NicholsTruncation nt;
  nt.tuples.push_back({{}});
  nt.image.push_back(Subspace::full(f, 1));
  nt.kernel.emplace_back(f, 1);
  nt.dims.push_back(1);
  for (std::size_t m = 1; m <= N; ++m) {
    std::vector<std::uint32_t> cur;
    std::vector<std::vector<std::uint32_t>> ts;
    enumerate(g, m, N, cur, ts);
    std::sort(ts.begin(), ts.end());
    nt.tuples.push_back(ts);
    if (!ts.empty() && m > opt_.factorial_budget)
      throw braided::BudgetExceeded("symmetrizer degree " + std::to_string(m) + " exceeds factorial budget " +
                                    std::to_string(opt_.factorial_budget));
    std::vector<SparseVec> images;
    for (const auto& t : ts) {
      MultiTensor e;
      e[t] = Scalar::one(f);
      MultiTensor s = symmetrize(g, m, e);
      SparseVec v;
      for (const auto& [key, c] : s) v.push_back(nt.index(m, key), c);  // map order is sorted
      images.push_back(std::move(v));
    }
    nt.image.push_back(Subspace::span(f, ts.size(), images));
    nt.kernel.push_back(exact::kernel_of_map(f, ts.size(), ts.size(), images));
    nt.dims.push_back(nt.image.back().dim());
  }
  return nt;
}

const NicholsTruncation& Analysis::generator_nichols() {
  if (!gen_nichols_) gen_nichols_ = make_nichols(generators());
  return *gen_nichols_;
}

const NicholsTruncation& Analysis::primitive_nichols() {
  if (!prim_nichols_) prim_nichols_ = make_nichols(primitive_space());
  return *prim_nichols_;
}

const std::vector<Subspace>& Analysis::standard_filtration() {
  if (standard_) return *standard_;
  const Field& f = q_.field();
  const GeneratorSpace& g = generators();
  std::size_t N = q_.truncation();
  std::vector<Subspace> out;
  out.push_back(Subspace::span(f, q_.dim(), {SparseVec::unit(f, q_.unit())}));
  for (std::size_t k = 1; k <= N; ++k) {
    EchelonBuilder b(f, q_.dim());
    for (const auto& r : out.back().basis()) b.insert(r);
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (const auto& r : out.back().basis())
        if (auto p = q_.multiply(g.basis[i], r)) b.insert(*p);
    out.push_back(b.finish());
  }
  standard_ = std::move(out);
  return *standard_;
}

const tower::GradedPresentation& Analysis::nichols_presentation() {
  if (nichols_pres_) return *nichols_pres_;
  tower::RankResult r = tower::combinatorial_rank(fp_.space, q_.truncation(), opt_.max_steps);
  if (!r.rank) throw tower::StabilizationError("tower did not stabilize within " + std::to_string(r.max_steps) + " steps");
  nichols_pres_ = r.stages.back();
  return *nichols_pres_;
}

std::vector<std::size_t> Analysis::graded_dims() {
  const auto& L = standard_filtration();
  std::vector<std::size_t> out{L[0].dim()};
  for (std::size_t n = 1; n < L.size(); ++n) out.push_back(L[n].dim() - L[n - 1].dim());
  return out;
}

SparseVec Analysis::tuple_product(const GeneratorSpace& g, const std::vector<std::uint32_t>& t) {
  SparseVec acc = SparseVec::unit(q_.field(), q_.unit());
  for (auto i : t) {
    auto p = q_.multiply(acc, g.basis[i]);
    if (!p) throw std::logic_error("product outside the truncation");
    acc = std::move(*p);
  }
  return acc;
}

ThetaReport Analysis::theta_factors_check() {
  ThetaReport out;
  const auto& L = standard_filtration();
  std::size_t N = q_.truncation();
  if (fp_.generators == Generators::degree_one) {
    const auto& np = nichols_presentation();
    std::size_t d = q_.space().dim();
    for (std::size_t n = 2; n <= N && out.holds; ++n)
      for (const auto& t : np.ideal[n].basis()) {
        Poly p = Poly::from_vector(q_.field(), d, n, t);
        if (!L[n - 1].contains(q_.nf(p))) {
          out.holds = false;
          out.witness = Witness{n, p.to_string(q_.space().labels())};
          break;
        }
      }
    return out;
  }
  const GeneratorSpace& g = generators();
  const NicholsTruncation& nt = generator_nichols();
  for (std::size_t m = 2; m <= N && out.holds; ++m)
    for (const auto& kv : nt.kernel[m].basis()) {
      SparseVec u;
      for (std::size_t k = 0; k < kv.idx.size(); ++k) u.axpy(kv.val[k], tuple_product(g, nt.tuples[m][kv.idx[k]]));
      if (!L[m - 1].contains(u)) {
        out.holds = false;
        std::string e;
        for (std::size_t k = 0; k < kv.idx.size(); ++k)
          e += (k ? " + (" : "(") + kv.val[k].to_string() + ") g" + tuple_string(nt.tuples[m][kv.idx[k]]);
        out.witness = Witness{m, e};
        break;
      }
    }
  return out;
}

PBWReport Analysis::pbw_check() {
  PBWReport r;
  r.theta = theta_factors_check();
  r.graded_dims = graded_dims();
  if (fp_.generators == Generators::degree_one)
    r.nichols_dims = nichols_presentation().quotient_dims();
  else
    r.nichols_dims = generator_nichols().dims;
  for (std::size_t n = 0; n < r.graded_dims.size(); ++n)
    if (r.graded_dims[n] != r.nichols_dims[n]) {
      r.first_mismatch = n;
      break;
    }
  r.pbw_type = r.theta.holds && !r.first_mismatch;
  return r;
}

std::vector<std::vector<Word>> Analysis::pbw_basis() {
  if (fp_.generators != Generators::degree_one)
    throw PresentationError("PBW basis words need the degree-one generating space");
  PBWReport r = pbw_check();
  if (!r.pbw_type) throw PresentationError("presentation is not of PBW type within the truncation");
  const auto& np = nichols_presentation();
  const auto& L = standard_filtration();
  const Field& f = q_.field();
  std::size_t d = q_.space().dim();
  std::vector<std::vector<Word>> out;
  for (std::size_t n = 0; n <= q_.truncation(); ++n) {
    std::size_t size = braided::ipow(d, static_cast<unsigned>(n));
    EchelonBuilder b(f, size);
    for (const auto& row : np.ideal[n].basis()) b.insert(row);
    EchelonBuilder lower(f, q_.dim());
    if (n > 0)
      for (const auto& row : L[n - 1].basis()) lower.insert(row);
    std::vector<Word> words;
    for (std::uint32_t w = 0; w < size; ++w) {
      if (!b.insert(SparseVec::unit(f, w))) continue;
      Word word = braided::word_at(w, d, n);
      if (!lower.insert(q_.nf(word)))
        throw InconsistencyError("PBW word " + braided::word_string(word, q_.space().labels()) +
                                     " is dependent modulo lower filtration", CrossCheck{});
      words.push_back(word);
    }
    if (words.size() != r.graded_dims[n])
      throw InconsistencyError("PBW basis size differs from the graded dimension in degree " + std::to_string(n),
                               CrossCheck{});
    out.push_back(std::move(words));
  }
  return out;
}

StrictReport Analysis::strictly_generated_check() {
  StrictReport r;
  const auto& c = coradical();
  const auto& L = standard_filtration();
  const GeneratorSpace& g = generators();
  const Field& f = q_.field();
  r.validity = c.validity;
  r.strictly_generated = true;
  r.condition_form = true;
  for (std::size_t m = 0; m <= c.validity; ++m) {
    r.standard_dims.push_back(L[m].dim());
    r.coradical_dims.push_back(c.levels[m].dim());
    if (r.strictly_generated && !(L[m] == c.levels[m])) {
      r.strictly_generated = false;
      for (const auto& row : c.levels[m].basis())
        if (!L[m].contains(row)) {
          r.witness = Witness{m, q_.to_string(row)};
          break;
        }
    }
  }
  // G^m ∩ U_{m-1} ⊆ U^G_(m-1)
  std::vector<SparseVec> power;
  for (const auto& b : g.basis) power.push_back(b);
  for (std::size_t m = 1; m <= c.validity; ++m) {
    if (m > 1) {
      EchelonBuilder b(f, q_.dim());
      for (const auto& x : g.basis)
        for (const auto& y : power)
          if (auto p = q_.multiply(x, y)) b.insert(*p);
      power = b.rows();
    }
    Subspace gm = Subspace::span(f, q_.dim(), power);
    if (!L[m - 1].contains(intersect(gm, c.levels[m - 1]))) r.condition_form = false;
  }
  return r;
}

MultiTensor Analysis::to_p_tuples(const MultiTensor& t, std::size_t m) {
  const GeneratorSpace& p = primitive_space();
  std::map<std::uint32_t, std::uint32_t> of_pivot;
  for (std::uint32_t i = 0; i < p.pivots.size(); ++i) of_pivot[p.pivots[i]] = i;
  MultiTensor coords;
  for (const auto& [key, v] : t) {
    std::vector<std::uint32_t> k2;
    for (auto u : key) {
      auto it = of_pivot.find(u);
      if (it == of_pivot.end()) break;
      k2.push_back(it->second);
    }
    if (k2.size() == m) add_to(coords, k2, v);
  }
  // expand back and compare
  MultiTensor rebuilt;
  for (const auto& [key, v] : coords) {
    MultiTensor partial;
    partial[{}] = v;
    for (auto i : key) {
      MultiTensor nx;
      const SparseVec& b = p.basis[i];
      for (const auto& [pk, pv] : partial)
        for (std::size_t s = 0; s < b.idx.size(); ++s) {
          auto nk = pk;
          nk.push_back(b.idx[s]);
          add_to(nx, nk, pv * b.val[s]);
        }
      partial = std::move(nx);
    }
    for (const auto& [k, x] : partial) add_to(rebuilt, k, x);
  }
  if (rebuilt != t) throw std::logic_error("iterated coproduct of a level element is not in P^{⊗m}");
  return coords;
}

LinearizationMap Analysis::linearization_map(std::size_t m) {
  const auto& c = coradical();
  if (m < 1 || m > c.truncation) throw std::out_of_range("coradical level outside the truncation");
  const Field& f = q_.field();
  const NicholsTruncation& nt = primitive_nichols();
  LinearizationMap lm;
  lm.level = m;
  EchelonBuilder b(f, q_.dim());
  for (const auto& row : c.levels[m - 1].basis()) b.insert(row);
  for (const auto& row : c.levels[m].basis())
    if (b.insert(row)) lm.source.push_back(row);
  EchelonBuilder img(f, nt.tuples[m].size());
  for (const auto& x : lm.source) {
    lm.images.push_back(to_p_tuples(q_.iterated(x, m), m));
    SparseVec v;
    for (const auto& [key, val] : lm.images.back()) v.push_back(nt.index(m, key), val);
    if (!img.insert(v)) lm.injective = false;
  }
  return lm;
}

CosymReport Analysis::cosymmetric_check() {
  CosymReport r;
  const auto& c = coradical();
  r.validity = c.validity;
  const NicholsTruncation& nt = primitive_nichols();
  for (std::size_t m = 2; m <= c.validity && r.cosymmetric; ++m) {
    LinearizationMap lm = linearization_map(m);
    std::vector<std::size_t> order(lm.source.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return q_.degree(lm.source[a]) < q_.degree(lm.source[b]); });
    for (std::size_t k : order) {
      SparseVec v;
      for (const auto& [key, val] : lm.images[k]) v.push_back(nt.index(m, key), val);
      if (!nt.image[m].contains(v)) {
        r.cosymmetric = false;
        r.witness = Witness{m, q_.to_string(lm.source[k])};
        break;
      }
    }
  }
  return r;
}

LiftingReport Analysis::lifting_check() {
  LiftingReport r;
  const auto& c = coradical();
  const NicholsTruncation& nt = primitive_nichols();
  r.validity = c.validity;
  r.lifting = true;
  for (std::size_t m = 0; m <= c.validity; ++m) {
    r.gr_dims.push_back(c.gr_dims[m]);
    r.nichols_dims.push_back(nt.dims[m]);
    if (c.gr_dims[m] != nt.dims[m]) r.lifting = false;
    if (m >= 1 && !linearization_map(m).injective) r.linearization_injective = false;
  }
  return r;
}

CrossCheck Analysis::teopbw_crosscheck() {
  CrossCheck c;
  c.pbw = pbw_check();
  c.strict = strictly_generated_check();
  c.cosym = cosymmetric_check();
  c.lifting = lifting_check();
  bool a = c.pbw.pbw_type, b = c.strict.strictly_generated, d = c.cosym.cosymmetric, e = c.lifting.lifting;
  c.consistent = a == b && b == d && d == e && c.strict.condition_form == b && c.lifting.linearization_injective;
  if (!c.consistent) throw InconsistencyError("PBW, strict generation, cosymmetry and lifting disagree", c);
  return c;
}

}  // namespace braidkit::envelope
