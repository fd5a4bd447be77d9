#include "braidkit/envelope/bracket.hpp"
#include "braidkit/envelope/filtered.hpp"
#include "braidkit/envelope/quotient.hpp"
#include "doctest.h"

using namespace braidkit;
using namespace braidkit::envelope;
using exact::Field;

namespace {

Field Q = Field::rationals();

std::shared_ptr<const BraidedSpace> flip(const Field& f, std::size_t d, std::vector<std::string> labels = {}) {
  return std::make_shared<const BraidedSpace>(BraidedSpace::flip(f, d, std::move(labels)));
}

std::vector<std::size_t> graded(const FilteredPresentation& fp) {
  auto dims = fp.filtration_dims();
  std::vector<std::size_t> out{dims[0]};
  for (std::size_t n = 1; n < dims.size(); ++n) out.push_back(dims[n] - dims[n - 1]);
  return out;
}

}  // namespace

TEST_CASE("polynomial literals") {
  std::vector<std::string> labels = {"x1", "x2"};
  Poly p = parse_poly("x2x1 - x1 x2 - x1", labels, Q);
  CHECK(p.to_string(labels) == "-x1 x2 + x2 x1 - x1");
  CHECK(parse_poly("3/2 x1^2*x2 + (-1) x2", labels, Q).to_string(labels) == "3/2 x1 x1 x2 - x2");
  CHECK(parse_poly("x1^3 - 1", labels, Field::prime(3)).to_string(labels) == "x1 x1 x1 + 2");
  CHECK_THROWS(parse_poly("x1 + + x3", labels, Q));
  CHECK_THROWS(parse_poly("", labels, Q));
}

TEST_CASE("sl2 envelope has the classical dimensions") {
  auto s = flip(Q, 3, {"e", "h", "f"});
  BracketSpec b;
  b.kind = BracketKind::lie_flip;
  b.brackets = {{0, 1, parse_poly("-2 e", s->labels(), Q)},
                {0, 2, parse_poly("h", s->labels(), Q)},
                {1, 2, parse_poly("-2 f", s->labels(), Q)}};
  RelationSet rs = relations_from_bracket(s, b, 5);
  CHECK(rs.relations.size() == 3);
  FilteredPresentation fp = filtered_ideal(s, rs.relations, 5);
  CHECK(graded(fp) == std::vector<std::size_t>{1, 3, 6, 10, 15, 21});
  CHECK(fp.headroom_used == 2);
  CHECK(filtered_ideal_at(*s, rs.relations, 5, 2) == filtered_ideal_at(*s, rs.relations, 5, 3));
  CHECK(filtered_ideal_at(*s, rs.relations, 5, 2, kernels::Exec::serial) == fp.ideal);
  TruncatedQuotient u(fp);
  auto chk = u.check_bialgebra();
  CHECK(chk.coideal_ok);
  CHECK(chk.braided_ok);
}

TEST_CASE("Jacobi and antisymmetry are enforced") {
  auto s = flip(Q, 3);
  BracketSpec b;
  b.kind = BracketKind::lie_flip;
  b.brackets = {{0, 1, parse_poly("x3", s->labels(), Q)}, {1, 2, parse_poly("x1", s->labels(), Q)},
                {0, 2, parse_poly("x1", s->labels(), Q)}};
  CHECK_THROWS_AS(relations_from_bracket(s, b, 4), BracketError);
  b.brackets = {{0, 1, parse_poly("x3", s->labels(), Q)}, {1, 0, parse_poly("x3", s->labels(), Q)}};
  CHECK_THROWS_AS(relations_from_bracket(s, b, 4), BracketError);
  auto g = flip(Field::prime(2), 2);
  b.brackets.clear();
  CHECK_THROWS_AS(relations_from_bracket(g, b, 4), BracketError);  // lie_flip needs char 0
}

TEST_CASE("restricted envelopes") {
  auto s = flip(Field::prime(2), 2);
  BracketSpec b;
  b.kind = BracketKind::restricted_flip;
  FilteredPresentation fp = filtered_ideal(s, relations_from_bracket(s, b, 6).relations, 6);
  CHECK(graded(fp) == std::vector<std::size_t>{1, 2, 1, 0, 0, 0, 0});
  auto s3 = flip(Field::prime(3), 2);
  Field g3 = Field::prime(3);
  b.brackets = {{0, 1, parse_poly("x2", s3->labels(), g3)}};
  b.p_map = {parse_poly("x1", s3->labels(), g3), Poly(g3)};
  FilteredPresentation fp3 = filtered_ideal(s3, relations_from_bracket(s3, b, 6).relations, 6);
  CHECK(graded(fp3) == std::vector<std::size_t>{1, 2, 3, 2, 1, 0, 0});
  b.p_map = {Poly(g3), Poly(g3)};
  CHECK_THROWS_AS(relations_from_bracket(s3, b, 6), BracketError);
}

TEST_CASE("Stumbo envelope") {
  std::vector<std::vector<Scalar>> q = {{Scalar(Q, 2), Scalar(Q, 1)}, {Scalar(Q, 1), Scalar(Q, 1)}};
  auto s = std::make_shared<const BraidedSpace>(BraidedSpace::diagonal(Q, q));
  BracketSpec b;
  b.kind = BracketKind::rank1_map;
  b.pairs = {{parse_poly("x2 x1 - x1 x2", s->labels(), Q), parse_poly("x1", s->labels(), Q)}};
  RelationSet rs = relations_from_bracket(s, b, 6);
  CHECK(rs.notes.empty());
  FilteredPresentation fp = filtered_ideal(s, rs.relations, 6);
  CHECK(graded(fp) == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7});
  TruncatedQuotient u(fp);
  CHECK(u.check_bialgebra().coideal_ok);
  CHECK(u.check_bialgebra().braided_ok);
  // a value outside the braided compatibility is rejected
  b.pairs = {{parse_poly("x2 x1 - x1 x2", s->labels(), Q), parse_poly("x2", s->labels(), Q)}};
  CHECK_THROWS_AS(relations_from_bracket(s, b, 6), BracketError);
}
