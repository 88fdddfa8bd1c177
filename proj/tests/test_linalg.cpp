// Exact rational arithmetic and elimination-based linear algebra.
#include <catch2/catch_amalgamated.hpp>

#include "arquiver/matrix.hpp"
#include "arquiver/rational.hpp"

#include <random>

using namespace arq;

TEST_CASE("rational construction and canonical form") {
  CHECK(make_rat(2, -4) == Rat(-1, 2));
  CHECK(make_rat(-3, -6) == Rat(1, 2));
  CHECK(rat_to_string(make_rat(3, 2)) == "3/2");
  CHECK(rat_to_string(Rat(-1, 2)) == "-1/2");
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK(rat_to_string(Rat(0)) == "0");
  CHECK_THROWS_AS(make_rat(1, 0), std::invalid_argument);
}

TEST_CASE("rational parsing") {
  CHECK(rat_parse("7/3") == Rat(7, 3));
  CHECK(rat_parse("-5") == Rat(-5));
  CHECK(rat_parse("0") == Rat(0));
  CHECK(rat_parse("+2/6") == Rat(1, 3));
  CHECK_FALSE(rat_parse("").has_value());
  CHECK_FALSE(rat_parse("1/").has_value());
  CHECK_FALSE(rat_parse("/2").has_value());
  CHECK_FALSE(rat_parse("1.5").has_value());
  CHECK_FALSE(rat_parse("a").has_value());
  CHECK_FALSE(rat_parse("1/0").has_value());
}

TEST_CASE("solve_linear on a square invertible system") {
  Mat a = Mat::from_rows({{1, 2}, {3, 4}});
  RatVec b{Rat(5), Rat(6)};
  auto x = solve_linear(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(-4));
  CHECK((*x)[1] == Rat(9, 2));
}

TEST_CASE("solve_linear zeroes free variables") {
  Mat a = Mat::from_rows({{1, 2}});
  auto x = solve_linear(a, RatVec{Rat(4)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(4));
  CHECK((*x)[1] == Rat(0));
}

TEST_CASE("solve_linear detects inconsistency") {
  Mat a = Mat::from_rows({{1}, {1}});
  CHECK_FALSE(solve_linear(a, RatVec{Rat(1), Rat(2)}).has_value());
}

TEST_CASE("kernel basis of a rank-one wide matrix") {
  Mat a = Mat::from_rows({{1, 2, 3}});
  auto k = kernel_basis(a);
  REQUIRE(k.size() == 2);
  CHECK(k[0] == RatVec{Rat(-2), Rat(1), Rat(0)});
  CHECK(k[1] == RatVec{Rat(-3), Rat(0), Rat(1)});
}

TEST_CASE("kernel of an invertible matrix is trivial") {
  CHECK(kernel_basis(Mat::from_rows({{2, 1}, {1, 1}})).empty());
}

TEST_CASE("inverse") {
  Mat a = Mat::from_rows({{1, 2}, {3, 4}});
  Mat inv = inverse(a);
  CHECK(inv == Mat(2, 2, {Rat(-2), Rat(1), Rat(3, 2), Rat(-1, 2)}));
  CHECK((a * inv).is_identity());
  CHECK_THROWS_AS(inverse(Mat::from_rows({{1, 2}, {2, 4}})), std::domain_error);
}

TEST_CASE("matrix_order") {
  Mat rot = Mat::from_rows({{0, -1}, {1, 0}});
  CHECK(matrix_order(rot, 10) == 4);
  CHECK(matrix_order(Mat::identity(3), 10) == 1);
  CHECK_FALSE(matrix_order(Mat::from_rows({{1, 1}, {0, 1}}), 10).has_value());
}

TEST_CASE("rank") {
  CHECK(rank(Mat::from_rows({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(Mat(3, 3)) == 0);
  CHECK(rank(Mat::identity(4)) == 4);
}

TEST_CASE("randomized solve, kernel and inverse agree with direct checks") {
  std::mt19937_64 rng(20260822);
  std::uniform_int_distribution<int> dim(1, 5), entry(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    size_t n = dim(rng), mcols = dim(rng);
    Mat a(n, mcols);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < mcols; ++j) a(i, j) = Rat(entry(rng));
    for (const RatVec& v : kernel_basis(a)) {
      RatVec img = a.apply(v);
      for (const Rat& c : img) CHECK(c == 0);
    }
    RatVec b(n);
    for (size_t i = 0; i < n; ++i) b[i] = Rat(entry(rng));
    if (auto x = solve_linear(a, b)) {
      RatVec img = a.apply(*x);
      CHECK(img == b);
    }
    if (n == mcols && rank(a) == n) {
      CHECK((a * inverse(a)).is_identity());
      CHECK((inverse(a) * a).is_identity());
    }
  }
}
