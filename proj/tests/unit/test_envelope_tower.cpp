#include "braidkit/envelope/bracket.hpp"
#include "braidkit/envelope/envelope_tower.hpp"
#include "doctest.h"

using namespace braidkit;
using namespace braidkit::envelope;
using exact::Field;

namespace {

Field Q = Field::rationals();

std::shared_ptr<const BraidedSpace> diag(std::vector<std::vector<long>> m) {
  std::vector<std::vector<Scalar>> q;
  for (auto& r : m) {
    q.emplace_back();
    for (long v : r) q.back().emplace_back(Q, v);
  }
  return std::make_shared<const BraidedSpace>(BraidedSpace::diagonal(Q, q));
}

void stages_ok(const EnvelopeTower& t) {
  for (const auto& s : t.stages) {
    INFO("stage ", s.stage);
    CHECK(s.i_injective);
    CHECK(s.section_ok);
    CHECK(s.bracket_ok);
    CHECK(s.split_ok);
    CHECK(s.kernel_ok);
  }
}

}  // namespace

TEST_CASE("trivial rule reproduces the symmetric algebra tower") {
  for (auto s : {diag({{-1, 1}, {-1, -1}}), std::make_shared<const BraidedSpace>(BraidedSpace::flip(Q, 2))}) {
    const std::size_t N = 6;
    EnvelopeTower t = tower_envelope(s, trivial_rule(), N);
    tower::RankResult r = tower::combinatorial_rank(s, N);
    REQUIRE(t.stabilized_at);
    CHECK(*t.stabilized_at == *r.rank);
    for (std::size_t n = 0; n < t.presentations.size(); ++n) {
      auto g = from_graded(r.stages[n]);
      CHECK(t.presentations[n].filtration_dims() == g.filtration_dims());
      CHECK(t.presentations[n].ideal == g.ideal);
    }
    stages_ok(t);
    CHECK(t.ok());
  }
}

TEST_CASE("rank-one brackets stabilize after one stage") {
  SUBCASE("Stumbo") {
    auto s = diag({{2, 1}, {1, 1}});
    BracketSpec b;
    b.kind = BracketKind::rank1_map;
    b.pairs = {{parse_poly("x2 x1 - x1 x2", s->labels(), Q), parse_poly("x1", s->labels(), Q)}};
    auto rels = relations_from_bracket(s, b, 6).relations;
    EnvelopeTower t = tower_envelope(s, relation_rule(s, rels, 6), 6);
    REQUIRE(t.stabilized_at);
    CHECK(*t.stabilized_at == 1);
    CHECK(t.result().ideal == filtered_ideal(s, rels, 6).ideal);
    stages_ok(t);
  }
  SUBCASE("sl2") {
    auto s = std::make_shared<const BraidedSpace>(BraidedSpace::flip(Q, 3, {"e", "h", "f"}));
    BracketSpec b;
    b.kind = BracketKind::lie_flip;
    b.brackets = {{0, 1, parse_poly("-2 e", s->labels(), Q)},
                  {0, 2, parse_poly("h", s->labels(), Q)},
                  {1, 2, parse_poly("-2 f", s->labels(), Q)}};
    auto rels = relations_from_bracket(s, b, 4).relations;
    EnvelopeTower t = tower_envelope(s, relation_rule(s, rels, 4), 4);
    REQUIRE(t.stabilized_at);
    CHECK(*t.stabilized_at == 1);
    CHECK(t.result().ideal == filtered_ideal(s, rels, 4).ideal);
    stages_ok(t);
  }
}

TEST_CASE("identity rule on primitives gives back the tensor algebra") {
  auto s = diag({{-1, 1}, {-1, -1}});
  EnvelopeTower t = tower_envelope(s, primitives_identity_rule(), 6);
  REQUIRE(t.stabilized_at);
  CHECK(*t.stabilized_at == 0);
  CHECK(t.result().ideal.dim() == 0);
  CHECK(t.result().generators == Generators::primitives);
  stages_ok(t);
  Analysis a(t.result());
  CrossCheck c = a.teopbw_crosscheck();
  CHECK_FALSE(c.pbw.pbw_type);
  CHECK_FALSE(c.lifting.lifting);
}

TEST_CASE("a cosymmetric stage bounds the rank") {
  for (auto s : {diag({{-1, 1}, {-1, -1}}), std::make_shared<const BraidedSpace>(BraidedSpace::flip(Q, 2))}) {
    KhaCosymReport r = khacosym_consistency(s, 6);
    CHECK(r.consistent);
    REQUIRE(r.stages.size() >= 2);
    CHECK(r.stages[1].cosymmetric);
    REQUIRE(r.rank);
    CHECK(*r.rank <= 2);
  }
  KhaCosymReport k = khacosym_consistency(diag({{-1, 1}, {-1, -1}}), 6);
  CHECK_FALSE(k.stages[0].cosymmetric);
  CHECK(*k.rank == 2);
}
