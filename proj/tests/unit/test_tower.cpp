#include "braidkit/tower/tower.hpp"
#include "doctest.h"

using namespace braidkit;
using namespace braidkit::tower;
using braided::BraidedSpace;
using exact::Field;

namespace {

Field Q = Field::rationals();

std::shared_ptr<const BraidedSpace> diag(const Field& f, std::vector<std::vector<long>> q) {
  std::vector<std::vector<Scalar>> m;
  for (auto& row : q) {
    m.emplace_back();
    for (long x : row) m.back().emplace_back(f, x);
  }
  return std::make_shared<const BraidedSpace>(BraidedSpace::diagonal(f, m));
}

}  // namespace

TEST_CASE("Kharchenko braiding has combinatorial rank two") {
  auto s = diag(Q, {{-1, 1}, {-1, -1}});
  RankResult r = combinatorial_rank(s, 6);
  REQUIRE(r.rank.has_value());
  CHECK(*r.rank == 2);
  CHECK(r.stages[1].quotient_dims() == std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 2});
  CHECK(r.stages[2].quotient_dims() == std::vector<std::size_t>{1, 2, 2, 2, 1, 0, 0});
  CHECK(r.new_primitives[1][4] == 1);
  CHECK(nichols_dims_symmetrizer(*s, 6) == r.stages[2].quotient_dims());
  // primitives of the stabilized stage are its ideal
  for (std::size_t n = 2; n <= 6; ++n) CHECK(primitives_of_degree(r.stages[2], n) == r.stages[2].ideal[n]);
  for (const auto& st : r.stages) CHECK(verify(st).ok());
}

TEST_CASE("flip braidings have rank one") {
  auto s = std::make_shared<const BraidedSpace>(BraidedSpace::flip(Q, 2));
  RankResult r = combinatorial_rank(s, 6);
  CHECK(r.rank == std::optional<std::size_t>(1));
  CHECK(r.stages.back().quotient_dims() == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7});
  auto s3 = std::make_shared<const BraidedSpace>(BraidedSpace::flip(Q, 3));
  CHECK(nichols_dims_tower(s3, 5) == std::vector<std::size_t>{1, 3, 6, 10, 15, 21});
  auto g2 = std::make_shared<const BraidedSpace>(BraidedSpace::flip(Field::prime(2), 2));
  CHECK(nichols_dims_tower(g2, 6) == std::vector<std::size_t>{1, 2, 1, 0, 0, 0, 0});
  CHECK(nichols_dims_symmetrizer(*g2, 6) == std::vector<std::size_t>{1, 2, 1, 0, 0, 0, 0});
}

TEST_CASE("serial and parallel closure agree") {
  auto s = diag(Q, {{-1, 1}, {-1, -1}});
  GradedPresentation g = free_presentation(s, 5);
  std::vector<Subspace> gens;
  for (std::size_t n = 0; n <= 5; ++n) gens.push_back(n >= 2 ? primitives_of_degree(g, n, kernels::Exec::serial) : g.ideal[n]);
  for (std::size_t n = 2; n <= 5; ++n) CHECK(gens[n] == primitives_of_degree(g, n, kernels::Exec::parallel));
  CHECK(ideal_closure(*s, gens, 5, kernels::Exec::serial) == ideal_closure(*s, gens, 5, kernels::Exec::parallel));
}

TEST_CASE("verification rejects a non-coideal") {
  auto s = std::make_shared<const BraidedSpace>(BraidedSpace::flip(Q, 2));
  GradedPresentation g = free_presentation(s, 3);
  // x1 x1 is not primitive for the flip in characteristic zero
  std::vector<Subspace> gens = g.ideal;
  gens[2] = Subspace::span(Q, 4, {SparseVec::unit(Q, 0)});
  g.ideal = ideal_closure(*s, gens, 3);
  Verification v = verify(g);
  CHECK_FALSE(v.coideal_ok);
  CHECK(v.first->degree == 2);
}
