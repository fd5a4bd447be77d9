#include <random>

#include "braidkit/exact/subspace.hpp"
#include "doctest.h"

using namespace braidkit::exact;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, double density, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-3, 3);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (u(rng) < density) m.set(i, j, Scalar(f, v(rng)));
  return m;
}

Subspace random_subspace(const Field& f, std::size_t n, std::size_t k, std::mt19937& rng) {
  Matrix m = random_matrix(f, k, n, 0.4, rng);
  std::vector<SparseVec> rows;
  for (std::size_t i = 0; i < k; ++i) rows.push_back(m.row(i));
  return Subspace::span(f, n, rows);
}

}  // namespace

TEST_CASE("scalar arithmetic over Q and GF(p)") {
  Field q = Field::rationals();
  Scalar a = Scalar::parse(q, "3/4"), b = Scalar::parse(q, "-1/6");
  CHECK((a + b).to_string() == "7/12");
  CHECK((a * b).to_string() == "-1/8");
  CHECK((a / b).to_string() == "-9/2");
  Field g = Field::prime(7);
  Scalar x = Scalar::parse(g, "3/4");
  CHECK((x * Scalar(g, 4)).to_string() == "3");
  CHECK(Scalar(g, -1).to_string() == "6");
  CHECK((Scalar(g, 3).inverse() * Scalar(g, 3)).is_one());
  CHECK_THROWS_AS(a + x, FieldMismatch);
  CHECK_THROWS_AS(Scalar(Field::prime(5), 1) + Scalar(Field::prime(7), 1), FieldMismatch);
  CHECK_THROWS(Field::prime(9));
  CHECK_THROWS(Scalar::parse(Field::prime(3), "1/3"));
  CHECK(Field::parse("GF:5") == Field::prime(5));
  CHECK(Field::parse("GF(5)") == Field::prime(5));
}

TEST_CASE("rref on a small matrix") {
  Field q = Field::rationals();
  std::vector<std::vector<Scalar>> rows = {
      {Scalar(q, 1), Scalar(q, 2), Scalar(q, 3)},
      {Scalar(q, 2), Scalar(q, 4), Scalar(q, 6)},
      {Scalar(q, 1), Scalar(q, 0), Scalar(q, 1)}};
  Echelon e = rref(Matrix::from_dense(q, rows));
  CHECK(e.rank == 2);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
  CHECK(e.echelon.at(0, 2).to_string() == "1");
  CHECK(e.echelon.at(1, 2).to_string() == "1");
  Subspace k = kernel(Matrix::from_dense(q, rows));
  CHECK(k.dim() == 1);
}

TEST_CASE("mixed field entries are rejected") {
  Field q = Field::rationals();
  std::vector<std::vector<Scalar>> rows = {{Scalar(q, 1), Scalar(Field::prime(3), 1)}};
  CHECK_THROWS_AS(Matrix::from_dense(q, rows), FieldMismatch);
  Matrix m(q, 1, 1);
  CHECK_THROWS_AS(m.set(0, 0, Scalar(Field::prime(3), 1)), FieldMismatch);
}

TEST_CASE("dense and sparse elimination agree, rank-nullity") {
  std::mt19937 rng(7);
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(5)}) {
    for (int t = 0; t < 30; ++t) {
      std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
      Matrix m = random_matrix(f, r, c, t % 2 ? 0.8 : 0.3, rng);
      Echelon a = rref_dense(m), b = rref_sparse(m);
      CHECK(a.echelon == b.echelon);
      CHECK(a.pivots == b.pivots);
      Subspace k = kernel(m);
      CHECK(a.rank + k.dim() == c);
      for (const auto& v : k.basis()) CHECK(m.apply(v).empty());
      // idempotence
      CHECK(rref(a.echelon).echelon == a.echelon);
    }
  }
}

TEST_CASE("Grassmann identity and subspace operations") {
  std::mt19937 rng(11);
  for (Field f : {Field::rationals(), Field::prime(3)}) {
    for (int t = 0; t < 30; ++t) {
      std::size_t n = 2 + rng() % 8;
      Subspace a = random_subspace(f, n, rng() % (n + 1), rng);
      Subspace b = random_subspace(f, n, rng() % (n + 1), rng);
      Subspace s = sum(a, b), i = intersect(a, b);
      CHECK(s.dim() + i.dim() == a.dim() + b.dim());
      CHECK(s.contains(a));
      CHECK(a.contains(i));
      CHECK(b.contains(i));
      CHECK(quotient_dim(s, a) == s.dim() - a.dim());
      CHECK(sum(a, a) == a);
      CHECK(intersect(a, a) == a);
    }
  }
  Subspace a(Field::rationals(), 3), b(Field::rationals(), 4);
  CHECK_THROWS(sum(a, b));
  Subspace full = Subspace::full(Field::rationals(), 3);
  CHECK_THROWS(quotient_dim(a, full));
}

TEST_CASE("incremental echelon matches batch rref") {
  std::mt19937 rng(3);
  Field f = Field::rationals();
  Matrix m = random_matrix(f, 12, 10, 0.3, rng);
  EchelonBuilder b(f, 10);
  for (std::size_t r = 0; r < 12; ++r) b.insert(m.row(r));
  Echelon e = rref_dense(m);
  CHECK(b.rank() == e.rank);
  for (std::size_t r = 0; r < e.rank; ++r) CHECK(b.rows()[r] == e.echelon.row(r));
}
