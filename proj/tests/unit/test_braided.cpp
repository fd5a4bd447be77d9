#include <algorithm>
#include <numeric>
#include <random>

#include "braidkit/braided/operators.hpp"
#include "doctest.h"

using namespace braidkit;
using namespace braidkit::braided;
using exact::Field;
using exact::Scalar;
using exact::SparseVec;

namespace {

Field Q = Field::rationals();

BraidedSpace kharchenko() {
  std::vector<std::vector<Scalar>> q = {{Scalar(Q, -1), Scalar(Q, 1)}, {Scalar(Q, -1), Scalar(Q, -1)}};
  return BraidedSpace::diagonal(Q, q);
}

// Jordan braiding c(x⊗y) = g·y⊗x with g x1 = x1, g x2 = x2 + x1.
BraidedSpace jordan() {
  exact::Matrix c(Q, 4, 4);
  c.set(0, 0, Scalar(Q, 1));
  c.set(2, 1, Scalar(Q, 1));
  c.set(0, 1, Scalar(Q, 1));
  c.set(1, 2, Scalar(Q, 1));
  c.set(3, 3, Scalar(Q, 1));
  c.set(1, 3, Scalar(Q, 1));
  return BraidedSpace(Q, 2, c);
}

// Δ(x w') = (x⊗1 + 1⊗x) Δ(w') in the braided tensor product, component (p, q).
SparseVec recursive_delta(const BraidedSpace& s, const Word& w, std::size_t p) {
  std::size_t n = w.size(), d = s.dim();
  if (p == 0 || p == n) return SparseVec::unit(Q, word_index(w, d));
  Word tail(w.begin() + 1, w.end());
  std::uint32_t lead = static_cast<std::uint32_t>(w[0]) * static_cast<std::uint32_t>(ipow(d, static_cast<unsigned>(n - 1)));
  SparseVec out;
  Scalar one = Scalar::one(Q);
  auto prepend = [&](const SparseVec& v) {
    SparseVec r;
    for (std::size_t k = 0; k < v.idx.size(); ++k) r.push_back(lead + v.idx[k], v.val[k]);
    return r;
  };
  out.axpy(one, prepend(recursive_delta(s, tail, p - 1)));
  SparseVec moved = prepend(recursive_delta(s, tail, p));
  out.axpy(one, apply_word(s, reduced_word(block_crossing(1, p)), n, moved));
  return out;
}

std::vector<BraidedSpace> samples() {
  return {BraidedSpace::flip(Q, 2), BraidedSpace::flip(Q, 3), kharchenko(), jordan(),
          BraidedSpace::diagonal(Q, {{Scalar(Q, 2), Scalar(Q, 1)}, {Scalar(Q, 1), Scalar(Q, 1)}})};
}

}  // namespace

TEST_CASE("braid equation detection") {
  auto flip = BraidedSpace::flip(Q, 2);
  CHECK(check_qybe(flip));
  exact::Matrix bad = flip.braiding();
  bad.set(0, 0, Scalar(Q, 2));
  bad.set(1, 2, Scalar(Q, 3));
  CHECK(check_qybe(bad, 2));  // diagonal rescaling still satisfies the braid equation
  exact::Matrix mixed = flip.braiding();
  mixed.set(1, 1, Scalar(Q, 2));
  CHECK_FALSE(check_qybe(mixed, 2));
  CHECK_THROWS_AS(BraidedSpace(Q, 2, mixed), BraidingError);
  exact::Matrix singular(Q, 4, 4);
  singular.set(0, 0, Scalar(Q, 1));
  CHECK_THROWS_AS(BraidedSpace(Q, 2, singular), BraidingError);
  CHECK(check_qybe(jordan()));
}

TEST_CASE("braid relations on tensor powers") {
  for (const auto& s : samples()) {
    std::size_t top = s.dim() == 2 ? 5 : 4;
    for (std::size_t n = 3; n <= top; ++n) {
      for (std::size_t i = 1; i + 1 < n; ++i) {
        auto a = sigma(s, i, n), b = sigma(s, i + 1, n);
        CHECK(a.compose(b).compose(a) == b.compose(a).compose(b));
      }
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j)
          CHECK(sigma(s, i, n).compose(sigma(s, j, n)) == sigma(s, j, n).compose(sigma(s, i, n)));
    }
  }
}

TEST_CASE("lift does not depend on the reduced word") {
  std::mt19937 rng(5);
  auto s = jordan();
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 2 + rng() % 4;
    Permutation w(n);
    std::iota(w.begin(), w.end(), 0);
    std::shuffle(w.begin(), w.end(), rng);
    auto lift = braid_lift(s, w);
    // random reduced word: repeatedly pick any left descent
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
    CHECK(word.size() == inversions(w));
    auto op = GradedOperator::identity(Q, 2, n);
    for (int g : word) op = op.compose(sigma(s, static_cast<std::size_t>(g) + 1, n));
    CHECK(op == lift);
  }
}

TEST_CASE("small coproduct components") {
  auto s = jordan();
  auto d21 = delta_component(s, 2, 1);
  auto expect = GradedOperator::identity(Q, 2, 3) + sigma(s, 2, 3) + sigma(s, 2, 3).compose(sigma(s, 1, 3));
  CHECK(d21 == expect);
  // flip: c^{2,1} is the 3-cycle sending x_a x_b x_c to x_c x_a x_b
  auto flip = BraidedSpace::flip(Q, 2);
  auto ct = ct_component(flip, 2, 1);
  for (std::uint32_t j = 0; j < 8; ++j) {
    Word w = word_at(j, 2, 3);
    Word moved = {w[2], w[0], w[1]};
    CHECK(ct.column(j) == SparseVec::unit(Q, word_index(moved, 2)));
  }
}

TEST_CASE("shuffle coproduct agrees with the recursive definition") {
  for (const auto& s : samples()) {
    std::size_t top = s.dim() == 2 ? 6 : 4;
    for (std::size_t n = 1; n <= top; ++n)
      for (std::size_t p = 0; p <= n; ++p) {
        auto op = delta_component(s, p, n - p);
        for (std::uint32_t j = 0; j < op.size(); ++j)
          CHECK(op.column(j) == recursive_delta(s, word_at(j, s.dim(), n), p));
      }
  }
}

TEST_CASE("coassociativity") {
  for (const auto& s : samples()) {
    std::size_t top = s.dim() == 2 ? 6 : 4;
    for (std::size_t n = 0; n <= top; ++n)
      for (std::size_t p = 0; p <= n; ++p)
        for (std::size_t q = 0; p + q <= n; ++q) {
          std::size_t r = n - p - q;
          auto lhs = GradedOperator::tensor(delta_component(s, p, q), GradedOperator::identity(Q, s.dim(), r))
                         .compose(delta_component(s, p + q, r));
          auto rhs = GradedOperator::tensor(GradedOperator::identity(Q, s.dim(), p), delta_component(s, q, r))
                         .compose(delta_component(s, p, q + r));
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("multiplicativity of the coproduct") {
  // Δ_{p,q}(uv) = Σ (m⊗m)(id⊗c^{q1,p2}⊗id)(Δ_{p1,q1}u ⊗ Δ_{p2,q2}v)
  for (const auto& s : samples()) {
    std::size_t d = s.dim();
    for (std::size_t a = 0; a <= 2; ++a)
      for (std::size_t b = 0; a + b <= 4; ++b) {
        std::size_t n = a + b;
        for (std::size_t p = 0; p <= n; ++p) {
          std::size_t q = n - p;
          auto full = delta_component(s, p, q);
          std::size_t nb = ipow(d, static_cast<unsigned>(b));
          for (std::uint32_t u = 0; u < ipow(d, static_cast<unsigned>(a)); ++u)
            for (std::uint32_t v = 0; v < nb; ++v) {
              SparseVec rhs;
              for (std::size_t p1 = 0; p1 <= std::min(p, a); ++p1) {
                std::size_t q1 = a - p1, p2 = p - p1;
                if (p2 > b) continue;
                std::size_t q2 = b - p2;
                SparseVec du = delta_component(s, p1, q1).column(u);
                SparseVec dv = delta_component(s, p2, q2).column(v);
                SparseVec prod;
                for (std::size_t x = 0; x < du.idx.size(); ++x)
                  for (std::size_t y = 0; y < dv.idx.size(); ++y)
                    prod.push_back(static_cast<std::uint32_t>(du.idx[x] * nb + dv.idx[y]), du.val[x] * dv.val[y]);
                // positions: [p1 | q1 | p2 | q2]; cross the q1 block past the p2 block
                if (q1 && p2) {
                  Permutation w(n);
                  for (std::size_t t = 0; t < n; ++t) w[t] = static_cast<int>(t);
                  for (std::size_t t = 0; t < q1; ++t) w[p1 + t] = static_cast<int>(p1 + p2 + t);
                  for (std::size_t t = 0; t < p2; ++t) w[p1 + q1 + t] = static_cast<int>(p1 + t);
                  prod = apply_word(s, reduced_word(w), n, prod);
                }
                rhs.axpy(Scalar::one(Q), prod);
              }
              CHECK(full.column(u * nb + v) == rhs);
            }
        }
      }
  }
}

TEST_CASE("symmetrizer equals the sum of all lifts") {
  for (const auto& s : samples()) {
    std::size_t top = s.dim() == 2 ? 5 : 4;
    for (std::size_t n = 1; n <= top; ++n) {
      Permutation w(n);
      std::iota(w.begin(), w.end(), 0);
      GradedOperator sum = braid_lift(s, w, kernels::Exec::serial);
      while (std::next_permutation(w.begin(), w.end())) sum = sum + braid_lift(s, w, kernels::Exec::serial);
      CHECK(quantum_symmetrizer(s, n) == sum);
      CHECK(quantum_symmetrizer(s, n, 7, kernels::Exec::serial) == quantum_symmetrizer(s, n, 7, kernels::Exec::parallel));
    }
  }
  CHECK_THROWS_AS(quantum_symmetrizer(BraidedSpace::flip(Q, 2), 8), BudgetExceeded);
}

TEST_CASE("symmetrizer ranks of known Nichols algebras") {
  std::vector<std::size_t> dims;
  auto k = kharchenko();
  for (std::size_t n = 0; n <= 6; ++n) dims.push_back(n == 0 ? 1 : quantum_symmetrizer(k, n).rank());
  CHECK(dims == std::vector<std::size_t>{1, 2, 2, 2, 1, 0, 0});
  auto flip = BraidedSpace::flip(Q, 2);
  for (std::size_t n = 1; n <= 6; ++n) CHECK(quantum_symmetrizer(flip, n).rank() == n + 1);
}
