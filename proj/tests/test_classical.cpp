#include <doctest.h>

#include <random>

#include "envalg/classical.hpp"
#include "envalg/enveloping.hpp"
#include "support.hpp"

using namespace envalg;

namespace {

RationalMatrix diag(std::initializer_list<long> values) {
  RationalMatrix m(values.size(), values.size());
  std::size_t k = 0;
  for (long v : values) {
    m(k, k) = v;
    ++k;
  }
  return m;
}

ClassicalPolynomial coord(const AlgebraSpec& s, int i, int j) { return ClassicalPolynomial::coordinate(s, i, j); }

// Tr (X + t A)^M at one numeric point, by plain matrix powers.
Rational trace_power(const RationalMatrix& x, const RationalMatrix& a, const Rational& t, int M) {
  const auto base = x + t * a;
  auto p = RationalMatrix::identity(base.rows());
  for (int s = 0; s < M; ++s) p = p * base;
  return p.trace();
}

}  // namespace

TEST_SUITE("classical") {

TEST_CASE("Lie-Poisson bracket examples") {
  const auto gl2 = parse_algebra("gl:2");
  CHECK(lie_poisson_bracket(coord(gl2, 1, 1), coord(gl2, 1, 2)) == coord(gl2, 1, 2));
  const auto f = coord(gl2, 1, 2) * coord(gl2, 2, 1) + Rational(3) * coord(gl2, 1, 1);
  CHECK(lie_poisson_bracket(f, f).is_zero());
  const auto gl3 = parse_algebra("gl:3");
  const auto c2 = casimir_classical(gl3, 2);
  for (const auto& [i, j] : gl3.generators()) CHECK(lie_poisson_bracket(c2, coord(gl3, i, j)).is_zero());
}

TEST_CASE("bracket is antisymmetric and satisfies Leibniz") {
  const auto so4 = parse_algebra("so:4");
  std::mt19937_64 rng(8);
  const auto& g = so4.generators();
  auto pick = [&] { const auto& [i, j] = g[rng() % g.size()]; return coord(so4, i, j); };
  for (int t = 0; t < 20; ++t) {
    const auto f = pick() * pick() + pick();
    const auto h = pick() * pick();
    const auto k = pick() + Rational(2) * pick();
    CHECK(lie_poisson_bracket(f, h) == Rational(-1) * lie_poisson_bracket(h, f));
    CHECK(lie_poisson_bracket(f, h * k) == lie_poisson_bracket(f, h) * k + h * lie_poisson_bracket(f, k));
  }
  CHECK_THROWS(lie_poisson_bracket(coord(so4, 1, 1), coord(parse_algebra("gl:2"), 1, 1)));
}

TEST_CASE("top-degree commutator equals the Poisson bracket of symbols") {
  const auto gl2 = UniversalEnveloping::of(parse_algebra("gl:2"));
  const auto g = support::oracle_for(gl2->spec());
  std::mt19937_64 rng(50);
  int nonzero = 0;
  for (int t = 0; t < 50; ++t) {
    const auto p = normal_form(support::from_oracle(gl2, oracle::random_poly(g, rng, 3, 3)));
    const auto q = normal_form(support::from_oracle(gl2, oracle::random_poly(g, rng, 3, 3)));
    if (p.degree() < 1 || q.degree() < 1) continue;
    const auto br = lie_poisson_bracket(top_symbol(p), top_symbol(q));
    const auto top = commutator(p, q).homogeneous_part(p.degree() + q.degree() - 1);
    if (br.is_zero()) {
      CHECK(top.is_zero());
      continue;
    }
    ++nonzero;
    CHECK(top_symbol(top) == br);
  }
  CHECK(nonzero > 25);
}

TEST_CASE("shift_expand examples") {
  const auto gl2 = parse_algebra("gl:2");
  const auto s = shift_expand(gl2, 2, diag({1, 2}));
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Rational(2) * (coord(gl2, 1, 1) + Rational(2) * coord(gl2, 2, 2)));
  CHECK(s[1] == ClassicalPolynomial(gl2, CommPoly(5)));
  const auto gl3 = parse_algebra("gl:3");
  const auto A = diag({1, 2, 0});
  for (int M = 1; M <= 4; ++M) {
    const auto terms = shift_expand(gl3, M, A);
    REQUIRE(terms.size() == static_cast<std::size_t>(M));
    CHECK(terms.back().poly().is_constant());
    CHECK(trace_power(RationalMatrix(3, 3), A, 1, M) == terms.back().poly().constant_term());
  }
}

TEST_CASE("shift expansion reproduces the shifted trace at 10 samples") {
  for (const char* d : {"gl:3", "so:4", "sp:2"}) {
    CAPTURE(d);
    const auto spec = parse_algebra(d);
    const auto A = spec.is_symmetric_family() ? random_shift_matrix(spec, spec.index_set(), -1, 4)
                                              : RationalMatrix::from_rows({{1, 2, 0}, {0, -1, 3}, {2, 0, 1}});
    std::mt19937_64 rng(10);
    for (int M = 1; M <= 3; ++M) {
      const auto terms = shift_expand(spec, M, A);
      const auto base = casimir_classical(spec, M);
      for (int t = 0; t < 10; ++t) {
        const auto x = random_point(spec, rng);
        const Rational lambda = oracle::fraction(static_cast<long>(rng() % 21) - 10, 3);
        Rational sum = base.poly().evaluate(x.coordinates);
        Rational power = 1;
        for (const auto& s : terms) {
          power *= lambda;
          sum += power * s.poly().evaluate(x.coordinates);
        }
        CHECK(sum == trace_power(x.matrix(), A, lambda, M));
      }
    }
  }
}

TEST_CASE("shift terms Poisson-commute") {
  const auto gl3 = parse_algebra("gl:3");
  const auto terms = shift_expand(gl3, 3, diag({1, 2, 0}));
  for (std::size_t a = 0; a < terms.size(); ++a)
    for (std::size_t b = a + 1; b < terms.size(); ++b) CHECK(lie_poisson_bracket(terms[a], terms[b]).is_zero());
}

TEST_CASE("classical images of shifted generators Poisson-commute") {
  const auto gl3 = parse_algebra("gl:3");
  const auto so4 = parse_algebra("so:4");
  const std::pair<AlgebraSpec, RationalMatrix> cases[] = {
      {gl3, diag({1, 2, 0})},
      {gl3, diag({1, 1, 0})},
      {so4, random_shift_matrix(so4, so4.index_set(), -1, 21)},
      {so4, random_shift_matrix(so4, so4.index_set(), 1, 22)},
  };
  for (const auto& [spec, A] : cases)
    for (int M = 1; M <= 3; ++M)
      for (int N = M + 1; N <= 3; ++N)
        CHECK(lie_poisson_bracket(shift_classical(spec, A, M), shift_classical(spec, A, N)).is_zero());
  const auto bad = RationalMatrix::from_rows({{1, 2, 0, 3}, {0, 1, 5, 0}, {0, 0, 2, 1}, {4, 0, 0, 3}});
  CHECK_FALSE(lie_poisson_bracket(shift_classical(so4, bad, 1), shift_classical(so4, bad, 2)).is_zero());
}

TEST_CASE("top symbols of quantum generators are the classical ones") {
  const auto gl3 = UniversalEnveloping::of(parse_algebra("gl:3"));
  const auto A = diag({1, 2, 0});
  for (int M = 1; M <= 3; ++M) {
    CHECK(top_symbol(shift_generator(gl3, A, M)) == shift_classical(gl3->spec(), A, M));
    CHECK(top_symbol(casimir(gl3, M)) == casimir_classical(gl3->spec(), M));
  }
}

TEST_CASE("charpoly invariants") {
  const auto gl2 = parse_algebra("gl:2");
  CHECK(charpoly_shift_invariant(gl2, 2, 1, diag({1, 2})).degree() == 1);
  const auto gl3 = parse_algebra("gl:3");
  CHECK(charpoly_shift_invariant(gl3, 3, 1, diag({1, 2, 0})).degree() == 2);
  CHECK_THROWS_AS(charpoly_shift_invariant(gl3, 3, 3, diag({1, 2, 0})), std::invalid_argument);
  CHECK_THROWS_AS(charpoly_shift_invariant(gl3, 4, 1, diag({1, 2, 0})), std::invalid_argument);

  // e_M(X + lambda A) at lambda = 1 from the characteristic polynomial of X + A.
  const auto A = RationalMatrix::from_rows({{1, 2, 0}, {0, -1, 3}, {2, 0, 1}});
  std::mt19937_64 rng(3);
  const auto x = random_point(gl3, rng);
  for (int M = 2; M <= 3; ++M) {
    Rational total = 0;
    const auto chi_x = characteristic_polynomial(x.matrix());
    const int sign = M % 2 == 0 ? 1 : -1;
    total += sign * chi_x[static_cast<std::size_t>(3 - M)];
    for (int k = 1; k < M; ++k) total += charpoly_shift_invariant(gl3, M, k, A).poly().evaluate(x.coordinates);
    const auto chi_a = characteristic_polynomial(A);
    total += sign * chi_a[static_cast<std::size_t>(3 - M)];
    const auto chi = characteristic_polynomial(x.matrix() + A);
    CHECK(total == sign * chi[static_cast<std::size_t>(3 - M)]);
  }
}

TEST_CASE("degree-M minor invariants vanish at rank-2 points") {
  const auto gl4 = parse_algebra("gl:4");
  const auto A = diag({1, 2, 0, 0});
  const auto p = charpoly_shift_invariant(gl4, 4, 1, A);
  CHECK(p.degree() == 3);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto x = random_rank2_point(gl4, seed);
    CHECK(rank(x.matrix()) == 2);
    CHECK(p.poly().evaluate(x.coordinates) == 0);
  }
  // A generic point does not kill it.
  std::mt19937_64 rng(4);
  CHECK(p.poly().evaluate(random_point(gl4, rng).coordinates) != 0);
}

TEST_CASE("rank-2 points") {
  for (const char* d : {"gl:3", "so:4", "so:5", "sp:2"}) {
    CAPTURE(d);
    const auto spec = parse_algebra(d);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto x = random_rank2_point(spec, seed);
      const auto m = x.matrix();
      CHECK(rank(m) == 2);
      CHECK(in_matrix_algebra(spec, m));
      CHECK(random_rank2_point(spec, seed).coordinates == x.coordinates);
    }
  }
  // Every 3x3 minor of a gl(3) rank-2 point vanishes; there is exactly one.
  const auto gl3 = parse_algebra("gl:3");
  const auto chi = characteristic_polynomial(random_rank2_point(gl3, 17).matrix());
  CHECK(chi[0] == 0);
}

TEST_CASE("gradient examples") {
  const auto gl2 = parse_algebra("gl:2");
  std::mt19937_64 rng(6);
  const auto x = random_point(gl2, rng);
  CHECK(gradient(coord(gl2, 1, 2), x) == std::vector<Rational>{0, 1, 0, 0});
  CHECK(gradient(ClassicalPolynomial(gl2, CommPoly(7)), x) == std::vector<Rational>(4, 0));
  const auto s = shift_expand(gl2, 2, diag({1, 2}));
  CHECK(gradient(s[0], x) == std::vector<Rational>{2, 0, 0, 4});
}

TEST_CASE("formatting") {
  const auto gl2 = parse_algebra("gl:2");
  CHECK(format_matrix(RationalMatrix::from_rows({{1, 0}, {0, Rational(-1, 2)}})) == "[[1,0],[0,-1/2]]");
  CHECK((coord(gl2, 1, 2) * coord(gl2, 2, 1)).format() == "X[1,2]*X[2,1]");
}

}  // TEST_SUITE
