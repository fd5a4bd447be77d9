// Acceptance suite: one PASS/FAIL line per criterion. Usage: acceptance [criterion...]
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "braidkit/envelope/envelope_tower.hpp"
#include "braidkit/workbench/problem.hpp"

using namespace braidkit;
using namespace braidkit::envelope;
using braided::GradedOperator;
using braided::Permutation;
using exact::Field;
using workbench::Problem;

namespace {

struct Log {
  std::vector<std::string> failures;
  std::size_t checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

std::string str(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Problem corpus(const std::string& name) { return workbench::materialize(workbench::builtin(name)); }

FilteredPresentation envelope_of(const Problem& p) {
  if (p.bracket.kind == BracketKind::custom_tower) {
    FilteredPresentation fp = filtered_ideal(p.space, {}, p.spec.truncation);
    fp.generators = Generators::primitives;
    return fp;
  }
  return filtered_ideal(p.space, relations_from_bracket(p.space, p.bracket, p.spec.truncation).relations,
                        p.spec.truncation);
}

std::vector<std::size_t> graded(const FilteredPresentation& fp) {
  auto f = fp.filtration_dims();
  std::vector<std::size_t> out{f[0]};
  for (std::size_t n = 1; n < f.size(); ++n) out.push_back(f[n] - f[n - 1]);
  return out;
}

// x_1^{a_1} ... x_d^{a_d} with a_i <= bound, in lex order of the words.
std::vector<Word> monomials(std::size_t d, std::size_t n, std::size_t bound) {
  std::vector<Word> out;
  std::vector<std::size_t> a(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == d) {
      if (left > bound) return;
      a[i] = left;
      Word w;
      for (std::size_t k = 0; k < d; ++k) w.insert(w.end(), a[k], static_cast<int>(k));
      out.push_back(w);
      return;
    }
    for (std::size_t e = std::min(left, bound) + 1; e-- > 0;) {
      a[i] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, n);
  std::sort(out.begin(), out.end());
  return out;
}

void check_pbw_words(Log& log, Analysis& a, std::size_t bound, const std::string& tag) {
  auto words = a.pbw_basis();
  std::size_t d = a.quotient().space().dim();
  for (std::size_t n = 0; n < words.size(); ++n) {
    auto expect = monomials(d, n, bound);
    log.expect(words[n] == expect, tag + ": PBW words of degree " + std::to_string(n) + " are not the ordered monomials");
  }
}

// 1
void oracle_agreement(Log& log) {
  for (const auto& name : workbench::builtin_names()) {
    Problem p = corpus(name);
    std::size_t N = p.space->dim() == 2 ? 6 : 5;
    auto t = tower::nichols_dims_tower(p.space, N);
    auto s = tower::nichols_dims_symmetrizer(*p.space, N);
    log.expect(t == s, name + ": tower " + str(t) + " vs symmetrizer " + str(s));
  }
}

// 2
void ranks(Log& log) {
  auto k = tower::combinatorial_rank(corpus("kharchenko").space, 6);
  log.expect(k.rank && *k.rank == 2, "kharchenko: rank 2 not certified at N=6");
  for (const auto& name : {"flip-d2-char0", "flip-d3-char0", "stumbo"}) {
    Problem p = corpus(name);
    auto r = tower::combinatorial_rank(p.space, p.spec.truncation);
    log.expect(r.rank && *r.rank <= 1, std::string(name) + ": rank <= 1 not certified");
  }
}

// 3
void stumbo(Log& log) {
  Analysis a(envelope_of(corpus("stumbo")));
  std::vector<std::size_t> expect = {1, 2, 3, 4, 5, 6, 7};
  log.expect(a.graded_dims() == expect, "stumbo: graded dims " + str(a.graded_dims()));
  log.expect(a.pbw_check().pbw_type, "stumbo: pbw_check false");
  check_pbw_words(log, a, 1000, "stumbo");
}

// 4
void sl2(Log& log) {
  Analysis a(envelope_of(corpus("sl2")));
  std::vector<std::size_t> expect;
  for (std::size_t n = 0; n <= 5; ++n) expect.push_back(binom(n + 2, 2));
  log.expect(a.graded_dims() == expect, "sl2: graded dims " + str(a.graded_dims()));
  log.expect(a.pbw_check().pbw_type, "sl2: pbw_check false");
  check_pbw_words(log, a, 1000, "sl2");
}

// 5
void restricted(Log& log) {
  Analysis a(envelope_of(corpus("restricted-gf2-abelian")));
  log.expect(a.presentation().filtration_dims().back() == 4, "gf2: total dimension is not 4");
  log.expect(a.graded_dims() == std::vector<std::size_t>{1, 2, 1, 0, 0, 0, 0}, "gf2: graded dims " + str(a.graded_dims()));
  check_pbw_words(log, a, 1, "gf2");
  Analysis b(envelope_of(corpus("restricted-gf3")));
  log.expect(b.graded_dims() == std::vector<std::size_t>{1, 2, 3, 2, 1, 0, 0}, "gf3: graded dims " + str(b.graded_dims()));
  check_pbw_words(log, b, 2, "gf3");
}

// 6
void equivalence(Log& log) {
  for (const auto& name : workbench::builtin_names()) {
    Problem p = corpus(name);
    bool expected = p.bracket.kind != BracketKind::custom_tower;
    Analysis a(envelope_of(p));
    try {
      CrossCheck c = a.teopbw_crosscheck();
      bool all = c.pbw.pbw_type == expected && c.strict.strictly_generated == expected &&
                 c.cosym.cosymmetric == expected && c.lifting.lifting == expected;
      log.expect(all, name + ": criteria differ from " + (expected ? "all-true" : "all-false"));
    } catch (const InconsistencyError& e) {
      log.expect(false, name + ": " + e.what());
    }
  }
}

// 7
void headroom(Log& log) {
  for (const auto& name : workbench::builtin_names()) {
    Problem p = corpus(name);
    std::vector<Poly> rels;
    if (p.bracket.kind != BracketKind::custom_tower)
      rels = relations_from_bracket(p.space, p.bracket, p.spec.truncation).relations;
    auto h2 = filtered_ideal_at(*p.space, rels, p.spec.truncation, 2);
    auto h3 = filtered_ideal_at(*p.space, rels, p.spec.truncation, 3);
    log.expect(h2 == h3, name + ": F differs between H=2 and H=3");
  }
}

// 8: structural suites

void suite_braid(Log& log) {
  for (const auto& name : workbench::builtin_names()) {
    Problem p = corpus(name);
    const auto& s = *p.space;
    log.expect(braided::check_qybe(s), name + ": QYBE");
    std::size_t top = s.dim() == 2 ? 5 : 4;
    for (std::size_t n = 3; n <= top; ++n) {
      for (std::size_t i = 1; i + 1 < n; ++i) {
        auto a = braided::sigma(s, i, n), b = braided::sigma(s, i + 1, n);
        log.expect(a.compose(b).compose(a) == b.compose(a).compose(b), name + ": braid relation");
      }
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j)
          log.expect(braided::sigma(s, i, n).compose(braided::sigma(s, j, n)) ==
                         braided::sigma(s, j, n).compose(braided::sigma(s, i, n)),
                     name + ": far commutation");
    }
  }
}

void suite_coassociativity(Log& log) {
  for (const auto& name : workbench::builtin_names()) {
    Problem p = corpus(name);
    const auto& s = *p.space;
    const Field& f = s.field();
    std::size_t top = s.dim() == 2 ? 5 : 4;
    for (std::size_t n = 0; n <= top; ++n)
      for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = 0; a + b <= n; ++b) {
          std::size_t c = n - a - b;
          auto lhs = GradedOperator::tensor(braided::delta_component(s, a, b), GradedOperator::identity(f, s.dim(), c))
                         .compose(braided::delta_component(s, a + b, c));
          auto rhs = GradedOperator::tensor(GradedOperator::identity(f, s.dim(), a), braided::delta_component(s, b, c))
                         .compose(braided::delta_component(s, a, b + c));
          log.expect(lhs == rhs, name + ": coassociativity (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                     std::to_string(c) + ")");
        }
  }
}

// Δ(uv) = (m⊗m)(id⊗c⊗id)(Δu⊗Δv) on T(V) up to degree 4, and the quotient maps on each envelope.
void suite_bialgebra(Log& log) {
  for (const auto& name : workbench::builtin_names()) {
    Problem p = corpus(name);
    const auto& s = *p.space;
    const Field& f = s.field();
    std::size_t d = s.dim();
    for (std::size_t a = 1; a <= 2; ++a)
      for (std::size_t b = 1; a + b <= 4; ++b) {
        std::size_t n = a + b, nb = braided::ipow(d, static_cast<unsigned>(b));
        for (std::size_t pp = 0; pp <= n; ++pp) {
          auto full = braided::delta_component(s, pp, n - pp);
          for (std::uint32_t u = 0; u < braided::ipow(d, static_cast<unsigned>(a)); ++u)
            for (std::uint32_t v = 0; v < nb; ++v) {
              SparseVec rhs;
              for (std::size_t p1 = 0; p1 <= std::min(pp, a); ++p1) {
                std::size_t q1 = a - p1, p2 = pp - p1;
                if (p2 > b) continue;
                SparseVec du = braided::delta_component(s, p1, q1).column(u);
                SparseVec dv = braided::delta_component(s, p2, b - p2).column(v);
                SparseVec prod;
                for (std::size_t x = 0; x < du.idx.size(); ++x)
                  for (std::size_t y = 0; y < dv.idx.size(); ++y)
                    prod.push_back(static_cast<std::uint32_t>(du.idx[x] * nb + dv.idx[y]), du.val[x] * dv.val[y]);
                if (q1 && p2) {
                  Permutation w(n);
                  std::iota(w.begin(), w.end(), 0);
                  for (std::size_t t = 0; t < q1; ++t) w[p1 + t] = static_cast<int>(p1 + p2 + t);
                  for (std::size_t t = 0; t < p2; ++t) w[p1 + q1 + t] = static_cast<int>(p1 + t);
                  prod = braided::apply_word(s, braided::reduced_word(w), n, prod);
                }
                rhs.axpy(exact::Scalar::one(f), prod);
              }
              log.expect(full.column(u * nb + v) == rhs, name + ": multiplicativity of Δ");
            }
        }
      }
    if (p.bracket.kind == BracketKind::custom_tower) continue;
    FilteredPresentation fp =
        filtered_ideal(p.space, relations_from_bracket(p.space, p.bracket, 4).relations, 4);
    TruncatedQuotient q(fp);
    BialgebraCheck bc = q.check_bialgebra();
    log.expect(bc.coideal_ok && bc.braided_ok, name + ": envelope ideal at degree 4: " + bc.witness);
  }
}

void suite_grassmann(Log& log) {
  std::mt19937 rng(20240611);
  for (const Field& f : {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(7)}) {
    for (int t = 0; t < 25; ++t) {
      std::size_t n = 3 + rng() % 6;
      auto random_vecs = [&](std::size_t k) {
        std::vector<SparseVec> vs;
        for (std::size_t i = 0; i < k; ++i) {
          SparseVec v;
          for (std::uint32_t j = 0; j < n; ++j)
            if (rng() % 3 == 0) {
              exact::Scalar c(f, static_cast<long>(rng() % 7) - 3);
              if (!c.is_zero()) v.push_back(j, c);
            }
          vs.push_back(v);
        }
        return vs;
      };
      Subspace A = Subspace::span(f, n, random_vecs(rng() % (n + 1)));
      Subspace B = Subspace::span(f, n, random_vecs(rng() % (n + 1)));
      log.expect(sum(A, B).dim() + intersect(A, B).dim() == A.dim() + B.dim(), "Grassmann over " + f.name());
      std::size_t m = 1 + rng() % n;
      auto cols = random_vecs(m);
      Subspace ker = exact::kernel_of_map(f, m, n, cols);
      log.expect(ker.dim() + Subspace::span(f, n, cols).dim() == m, "rank-nullity over " + f.name());
    }
  }
}

void suite_reduced_words(Log& log) {
  std::mt19937 rng(7);
  for (const auto& name : workbench::builtin_names()) {
    Problem p = corpus(name);
    const auto& s = *p.space;
    for (int t = 0; t < 6; ++t) {
      std::size_t n = 2 + rng() % (s.dim() == 2 ? 4 : 3);
      Permutation w(n);
      std::iota(w.begin(), w.end(), 0);
      std::shuffle(w.begin(), w.end(), rng);
      auto lift = braided::braid_lift(s, w);
      Permutation x = w;
      std::vector<int> word;
      for (;;) {
        Permutation inv(n);
        for (std::size_t a = 0; a < n; ++a) inv[static_cast<std::size_t>(x[a])] = static_cast<int>(a);
        std::vector<int> desc;
        for (std::size_t i = 0; i + 1 < n; ++i)
          if (inv[i] > inv[i + 1]) desc.push_back(static_cast<int>(i));
        if (desc.empty()) break;
        int g = desc[rng() % desc.size()];
        word.push_back(g);
        for (auto& y : x) y = y == g ? g + 1 : (y == g + 1 ? g : y);
      }
      auto op = GradedOperator::identity(s.field(), s.dim(), n);
      for (int g : word) op = op.compose(braided::sigma(s, static_cast<std::size_t>(g) + 1, n));
      log.expect(word.size() == braided::inversions(w) && op == lift, name + ": lift depends on the reduced word");
    }
  }
}

void suite_psplits(Log& log) {
  for (const auto& name : workbench::builtin_names()) {
    Problem p = corpus(name);
    std::size_t N = p.spec.truncation;
    EnvelopeRule rule;
    if (p.bracket.kind == BracketKind::trivial)
      rule = trivial_rule();
    else if (p.bracket.kind == BracketKind::custom_tower)
      rule = primitives_identity_rule();
    else
      rule = relation_rule(p.space, relations_from_bracket(p.space, p.bracket, N).relations, N);
    EnvelopeTower t = tower_envelope(p.space, rule, N);
    log.expect(t.stabilized_at.has_value(), name + ": envelope tower did not stabilize");
    for (const auto& st : t.stages) {
      std::string at = name + " stage " + std::to_string(st.stage) + ": ";
      log.expect(st.split_ok, at + "P is not ker b ⊕ V");
      log.expect(st.kernel_ok, at + "ker(π) ∩ P differs from ker b");
      log.expect(st.section_ok && st.bracket_ok && st.i_injective, at + "bracket datum");
    }
  }
}

void suite_khacosym(Log& log) {
  for (const auto& name : {"flip-d2-char0", "kharchenko"}) {
    Problem p = corpus(name);
    KhaCosymReport r = khacosym_consistency(p.space, p.spec.truncation);
    log.expect(r.consistent, std::string(name) + ": " + r.diagnostic);
    log.expect(r.stages.size() > 1 && r.stages[1].cosymmetric, std::string(name) + ": S^[1] not cosymmetric");
    log.expect(r.rank && *r.rank <= 2, std::string(name) + ": rank above 2");
  }
}

struct Criterion {
  int id;
  std::string title;
  std::vector<std::pair<std::string, std::function<void(Log&)>>> parts;
};

std::vector<Criterion> criteria() {
  return {
      {1, "Nichols dimensions: tower = symmetrizer on all corpus braidings", {{"", oracle_agreement}}},
      {2, "combinatorial rank: Kharchenko 2; flip and Stumbo <= 1", {{"", ranks}}},
      {3, "Stumbo algebra: dims n+1, PBW type, basis x1^a x2^b", {{"", stumbo}}},
      {4, "sl2: dims C(n+2,2), ordered monomials in e < h < f", {{"", sl2}}},
      {5, "restricted envelopes over GF(2) and GF(3)", {{"", restricted}}},
      {6, "PBW type = strict generation = cosymmetry = lifting on all corpus envelopes", {{"", equivalence}}},
      {7, "filtered ideal identical for headroom 2 and 3", {{"", headroom}}},
      {8,
       "structural property suites",
       {{"QYBE and braid relations", suite_braid},
        {"coassociativity of Δ", suite_coassociativity},
        {"bialgebra compatibility to degree 4", suite_bialgebra},
        {"Grassmann and rank-nullity", suite_grassmann},
        {"reduced-word independence of lifts", suite_reduced_words},
        {"P splits at every envelope tower stage", suite_psplits},
        {"cosymmetric stage bounds the rank", suite_khacosym}}},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  bool all_ok = true;
  for (const auto& c : criteria()) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::size_t checks = 0;
    std::ostringstream detail;
    for (const auto& [label, fn] : c.parts) {
      Log log;
      try {
        fn(log);
      } catch (const std::exception& e) {
        log.failures.push_back(std::string("exception: ") + e.what());
      }
      checks += log.checks;
      bool part_ok = log.failures.empty();
      ok = ok && part_ok;
      if (!label.empty())
        detail << "    " << (part_ok ? "ok   " : "FAIL ") << label << " (" << log.checks << " checks)\n";
      for (std::size_t k = 0; k < std::min<std::size_t>(log.failures.size(), 10); ++k)
        detail << "    - " << log.failures[k] << "\n";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs", secs);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << checks << " checks, "
              << buf << "]\n"
              << detail.str();
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
