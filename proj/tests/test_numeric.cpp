#include <doctest.h>

#include <random>

#include "envalg/comm_poly.hpp"
#include "envalg/linalg.hpp"
#include "envalg/rational.hpp"

using namespace envalg;

TEST_SUITE("numeric") {

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("+7/3") == Rational(7, 3));
  CHECK(to_string(parse_rational("-2/4")) == "-1/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rank, nullspace and solve") {
  const auto m = RationalMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  const auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  for (std::size_t r = 0; r < 3; ++r) {
    Rational dot = 0;
    for (std::size_t c = 0; c < 3; ++c) dot += m(r, c) * ns[0][c];
    CHECK(dot == 0);
  }
  const std::vector<Rational> rhs{6, 12, 2};
  const auto x = solve(m, rhs);
  REQUIRE(x);
  for (std::size_t r = 0; r < 3; ++r) {
    Rational dot = 0;
    for (std::size_t c = 0; c < 3; ++c) dot += m(r, c) * (*x)[c];
    CHECK(dot == rhs[r]);
  }
  const std::vector<Rational> inconsistent{1, 0, 0};
  CHECK_FALSE(solve(m, inconsistent));
  CHECK(rank(RationalMatrix(2, 3)) == 0);
  CHECK(rank(RationalMatrix::from_rows({{Rational(1, 3), Rational(1, 2)}, {2, 3}})) == 1);
}

TEST_CASE("rank agrees with a floating-point-free oracle on random matrices") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    // Product of a 5x r and r x 6 integer matrix has rank <= r.
    const std::size_t r = 1 + rng() % 4;
    RationalMatrix a(5, r), b(r, 6);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t k = 0; k < r; ++k) a(i, k) = static_cast<long>(rng() % 7) - 3;
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < 6; ++j) b(k, j) = static_cast<long>(rng() % 7) - 3;
    const auto p = a * b;
    CHECK(rank(p) <= r);
    CHECK(rank(p) == rank(p.transpose()));
    CHECK(rank(p) + nullspace(p).size() == 6);
  }
}

TEST_CASE("subspace intersection") {
  const std::vector<std::vector<Rational>> u{{1, 0, 0}, {0, 1, 0}};
  const std::vector<std::vector<Rational>> w{{0, 1, 0}, {0, 0, 1}};
  CHECK(intersection_dimension(u, w, 3) == 1);
  CHECK(intersection_dimension(u, u, 3) == 2);
  CHECK(intersection_dimension(u, {{0, 0, 1}}, 3) == 0);
}

TEST_CASE("characteristic polynomial and semisimplicity") {
  const auto m = RationalMatrix::from_rows({{2, 1}, {1, 2}});
  CHECK(characteristic_polynomial(m) == std::vector<Rational>{3, -4, 1});
  CHECK(is_semisimple(m));
  CHECK_FALSE(is_semisimple(RationalMatrix::from_rows({{1, 1}, {0, 1}})));
  CHECK(is_semisimple(RationalMatrix::from_rows({{0, -1}, {1, 0}})));
  CHECK_FALSE(is_semisimple(RationalMatrix::from_rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 5}})));
}

TEST_CASE("commutative polynomials") {
  const auto x = CommPoly::variable(0);
  const auto y = CommPoly::variable(1);
  const auto p = pow(x + y, 3);
  CHECK(p.degree() == 3);
  CHECK(p.terms().size() == 4);
  CHECK(p.derivative(0) == CommPoly(3) * pow(x + y, 2));
  CHECK(p.coefficient_of(1, 2) == CommPoly(3) * x);
  const std::vector<Rational> pt{2, -1};
  CHECK(p.evaluate(pt) == 1);
  CHECK(p.substitute(0, 2).evaluate(pt) == 1);
  CHECK((p - p).is_zero());
  CHECK(CommPoly(5).is_constant());
  CHECK(x.format([](std::size_t v) { return "v" + std::to_string(v); }) == "v0");
}

}  // TEST_SUITE
