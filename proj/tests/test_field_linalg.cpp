#include "doctest.h"

#include "corpus.hpp"
#include "gridpm/gridpm.hpp"

using namespace gridpm;
using gridpm::testing::random_matrix;

TEST_CASE("field spec validates the characteristic") {
  CHECK_NOTHROW(FieldSpec(0));
  CHECK_NOTHROW(FieldSpec(2));
  CHECK_NOTHROW(FieldSpec(65521));
  CHECK_THROWS_AS(FieldSpec(1), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec(4), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec(65536), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(91), std::invalid_argument);  // 7 * 13
}

TEST_CASE("prime field arithmetic") {
  PrimeField f5(5);
  CHECK(f5.add(3, 4) == 2);
  CHECK(f5.mul(3, 4) == 2);
  CHECK(f5.from_int(-1) == 4);
  CHECK(f5.inv(3) == 2);
  CHECK(f5.mul(f5.inv(4), 4) == 1);
  PrimeField f2(2);
  CHECK(f2.add(1, 1) == 0);
}

TEST_CASE("rationals stay reduced") {
  RationalField fq;
  auto e = fq.div(fq.from_int(4), fq.from_int(6));
  CHECK(fq.to_string(e) == "2/3");
  CHECK(fq.to_canonical_int(fq.from_int(-7)) == -7);
  CHECK_THROWS(fq.to_canonical_int(e));
}

TEST_CASE("rank basics") {
  PrimeField f2(2);
  RationalField fq;
  SUBCASE("empty matrix") {
    CHECK(Matrix<RationalField>(fq, 0, 0).rank() == 0);
    CHECK(Matrix<PrimeField>(f2, 0, 5).rank() == 0);
  }
  SUBCASE("identity") {
    CHECK(Matrix<RationalField>::identity(fq, 3).rank() == 3);
    CHECK(Matrix<PrimeField>::identity(f2, 3).rank() == 3);
  }
  SUBCASE("all-ones over GF(2) has rank 1") {
    Matrix<PrimeField> m(f2, 2, 2);
    m.set_int(0, 0, 1);
    m.set_int(0, 1, 1);
    m.set_int(1, 0, 1);
    m.set_int(1, 1, 1);
    CHECK(m.rank() == 1);
  }
  SUBCASE("characteristic matters") {
    // [[1,1],[1,-1]] has rank 2 over Q but rank 1 over GF(2)
    Matrix<RationalField> a(fq, 2, 2);
    a.set_int(0, 0, 1);
    a.set_int(0, 1, 1);
    a.set_int(1, 0, 1);
    a.set_int(1, 1, -1);
    CHECK(a.rank() == 2);
    Matrix<PrimeField> b(f2, 2, 2);
    b.set_int(0, 0, 1);
    b.set_int(0, 1, 1);
    b.set_int(1, 0, 1);
    b.set_int(1, 1, -1);
    CHECK(b.rank() == 1);
  }
}

TEST_CASE("nullspace basics") {
  PrimeField f2(2);
  RationalField fq;
  SUBCASE("identity has trivial nullspace") {
    CHECK(Matrix<RationalField>::identity(fq, 2).nullspace_basis().empty());
  }
  SUBCASE("[1 1] over GF(2) has the diagonal vector") {
    Matrix<PrimeField> m(f2, 1, 2);
    m.set_int(0, 0, 1);
    m.set_int(0, 1, 1);
    auto ns = m.nullspace_basis();
    REQUIRE(ns.size() == 1);
    CHECK(ns[0][0] == 1);
    CHECK(ns[0][1] == 1);
  }
  SUBCASE("0 x n matrix has the standard basis") {
    Matrix<RationalField> m(fq, 0, 3);
    auto ns = m.nullspace_basis();
    REQUIRE(ns.size() == 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(ns[i][j] == (i == j ? 1 : 0));
  }
}

TEST_CASE("matmul basics and errors") {
  PrimeField f2(2);
  Matrix<PrimeField> ones_row(f2, 1, 2), ones_col(f2, 2, 1);
  ones_row.set_int(0, 0, 1);
  ones_row.set_int(0, 1, 1);
  ones_col.set_int(0, 0, 1);
  ones_col.set_int(1, 0, 1);
  auto p = ones_row.mul(ones_col);
  CHECK(p.rows() == 1);
  CHECK(p.cols() == 1);
  CHECK(p(0, 0) == 0);  // 1 + 1 = 0 in GF(2)
  CHECK_THROWS_AS(ones_row.mul(ones_row), std::invalid_argument);
  RationalField fq;
  auto id = Matrix<RationalField>::identity(fq, 2);
  Matrix<RationalField> m(fq, 2, 2);
  m.set_int(0, 1, 7);
  m.set_int(1, 0, -3);
  CHECK(id.mul(m) == m);
}

TEST_CASE("rank invariants on random matrices") {
  PrimeField f5(5);
  RationalField fq;
  SplitMix64 rng(20240811);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + static_cast<int>(rng.below(5));
    int c = 1 + static_cast<int>(rng.below(5));
    auto m = random_matrix(f5, rng, r, c);
    CHECK(m.rank() == m.transpose().rank());
    auto mq = random_matrix(fq, rng, r, c, 3);
    CHECK(mq.rank() == mq.transpose().rank());

    auto b = random_matrix(f5, rng, c, 1 + static_cast<int>(rng.below(5)));
    int rk = m.mul(b).rank();
    CHECK(rk <= m.rank());
    CHECK(rk <= b.rank());

    for (const auto& v : mq.nullspace_basis()) {
      auto mv = mq.apply(v);
      for (const auto& e : mv) CHECK(fq.is_zero(e));
    }
    for (const auto& v : m.nullspace_basis()) {
      auto mv = m.apply(v);
      for (const auto& e : mv) CHECK(f5.is_zero(e));
    }
  }
}

TEST_CASE("rank over the rationals agrees with small prime fields on 0/1 construction matrices") {
  // the construction corpus only ever produces 0/1 matrices; compare ranks of
  // realized arrow matrices across scalar domains
  RationalField fq;
  PrimeField f2(2), f5(5);
  SplitMix64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    Barcode v = gridpm::testing::random_barcode(rng, 5, 0, 7);
    auto mq = stack(fq, build_primal(fq, v));
    for (const auto& [key, mat] : mq.arrows()) {
      Matrix<PrimeField> m2(f2, mat.rows(), mat.cols()), m5(f5, mat.rows(), mat.cols());
      for (int i = 0; i < mat.rows(); ++i)
        for (int j = 0; j < mat.cols(); ++j) {
          long long e = fq.to_canonical_int(mat(i, j));
          m2.set_int(i, j, e);
          m5.set_int(i, j, e);
        }
      CHECK(mat.rank() == m2.rank());
      CHECK(mat.rank() == m5.rank());
    }
  }
}
