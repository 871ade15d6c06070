#include "crnsr/linalg.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace crnsr;
using oracle::rmat;

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1/4") == Rational(-1, 4));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
}

TEST_CASE("rank of small matrices") {
  const RationalMatrix ring1 = rmat({{-1, 0, 2}, {-1, -1, 0}, {0, -1, -1}, {1, 0, 0}, {0, 1, 0}});
  CHECK(matrix_rank(ring1) == 3);
  CHECK(matrix_rank(rmat({{-1, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}})) == 2);
  CHECK(matrix_rank(RationalMatrix::Zero(3, 4).eval()) == 0);
  CHECK(matrix_rank(RationalMatrix(0, 0)) == 0);

  RationalMatrix frac(2, 2);
  frac << Rational(1, 2), Rational(1, 3), Rational(3, 2), Rational(1);
  CHECK(matrix_rank(frac) == 1);
}

TEST_CASE("Bareiss rank agrees with the minor-expansion oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::bernoulli_distribution sparse(0.4);
  for (int trial = 0; trial < 300; ++trial) {
    RationalMatrix m(dim(rng), dim(rng));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = sparse(rng) ? Rational(0) : Rational(entry(rng), 1 + (entry(rng) + 2) % 3);
    }
    // force some dependence now and then
    if (m.rows() > 1 && trial % 3 == 0) m.row(m.rows() - 1) = m.row(0) * Rational(2) - m.row(m.rows() / 2);
    CHECK(matrix_rank(m) == oracle::rank_by_minors(m));
  }
}

TEST_CASE("null spaces are exact and satisfy rank-nullity") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    RationalMatrix m(dim(rng), dim(rng));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    }
    const RationalMatrix n = null_space(m);
    const RationalMatrix w = left_null_space(m);
    CHECK(RationalMatrix(m * n).isZero());
    CHECK(RationalMatrix(w.transpose() * m).isZero());
    CHECK(matrix_rank(m) + n.cols() == m.cols());
    CHECK(matrix_rank(m) + w.cols() == m.rows());
    CHECK(matrix_rank(n) == n.cols());
  }
}

TEST_CASE("exact inverses") {
  const RationalMatrix t = rmat({{-1, 0, 2}, {-1, 1, 0}, {0, 1, -1}, {1, 0, 0}, {0, -1, 0}});
  const auto t_inv = left_inverse(t);
  REQUIRE(t_inv);
  CHECK(RationalMatrix(*t_inv * t) == RationalMatrix::Identity(3, 3));
  CHECK_FALSE(left_inverse(rmat({{1, 2}, {2, 4}, {0, 0}})));

  const RationalMatrix a = rmat({{2, 1}, {1, 1}});
  const auto a_inv = inverse(a);
  REQUIRE(a_inv);
  CHECK(*a_inv == rmat({{1, -1}, {-1, 2}}));
  CHECK_FALSE(inverse(rmat({{1, 1}, {1, 1}})));
}

TEST_CASE("column space containment") {
  const RationalMatrix t = rmat({{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, 0, 1}});
  const RationalMatrix gamma = rmat({{-1, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}});
  CHECK(column_space_contains(t, gamma));
  CHECK_FALSE(column_space_contains(gamma, t));
}

TEST_CASE("leading zeros are decimal") {
  CHECK(parse_rational("010") == Rational(10));
  CHECK(parse_rational("010/03") == Rational(10, 3));
  CHECK(parse_rational("1.05") == Rational(21, 20));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("00") == Rational(0));
}
