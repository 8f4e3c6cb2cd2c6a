#include <doctest.h>

#include "envalg/enveloping.hpp"
#include "support.hpp"

using namespace envalg;

namespace {

EnvelopingPtr alg(const char* d) { return UniversalEnveloping::of(parse_algebra(d)); }

QPoly X(const EnvelopingPtr& a, int i, int j) { return QPoly::generator(a, i, j); }

RationalMatrix diag(std::initializer_list<long> values) {
  RationalMatrix m(values.size(), values.size());
  std::size_t k = 0;
  for (long v : values) {
    m(k, k) = v;
    ++k;
  }
  return m;
}

// Sum over label paths i -> k_1 -> ... -> j of raw products, reduced by the oracle.
oracle::Poly power_oracle(const EnvelopingPtr& a, const oracle::Algebra& g, int M, int i, int j) {
  if (M == 0) return i == j ? oracle::Poly{{{}, 1}} : oracle::Poly{};
  oracle::Poly sum;
  std::vector<int> path(static_cast<std::size_t>(M) + 1);
  path.front() = i;
  path.back() = j;
  std::function<void(int)> walk = [&](int depth) {
    if (depth == M) {
      oracle::Poly prod{{{}, 1}};
      for (int s = 0; s < M; ++s)
        prod = oracle::concat_product(prod, support::to_oracle(X(a, path[static_cast<std::size_t>(s)],
                                                                 path[static_cast<std::size_t>(s) + 1])));
      for (const auto& [w, c] : prod) oracle::add(sum, w, c);
      return;
    }
    for (int k : g.labels) {
      path[static_cast<std::size_t>(depth)] = k;
      walk(depth + 1);
    }
  };
  walk(1);
  return oracle::normal_form_rightmost(g, sum);
}

RationalMatrix unit(std::size_t m, std::size_t r, std::size_t c) {
  RationalMatrix out(m, m);
  out(r, c) = 1;
  return out;
}

}  // namespace

TEST_SUITE("enveloping") {

TEST_CASE("matrix_power_element examples") {
  const auto gl2 = alg("gl:2");
  CHECK(matrix_power_element(gl2, 2, 1, 1) == parse_polynomial(gl2, "X[1,1].X[1,1] + X[1,2].X[2,1]"));
  CHECK(matrix_power_element(gl2, 0, 1, 2).is_zero());
  CHECK(matrix_power_element(gl2, 0, 1, 1) == QPoly::constant(gl2, 1));
  CHECK(matrix_power_element(gl2, 1, 2, 1) == X(gl2, 2, 1));
  CHECK_THROWS_AS(matrix_power_element(gl2, -1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(matrix_power_element(gl2, 1, 1, 3), std::out_of_range);

  const auto so3 = alg("so:3");
  QPoly by_definition(so3);
  for (int k : so3->spec().index_set()) by_definition += multiply(X(so3, 1, k), X(so3, k, 1));
  CHECK(matrix_power_element(so3, 2, 1, 1) == by_definition);
}

TEST_CASE("matrix powers agree with the path-sum oracle") {
  for (const char* d : {"gl:2", "gl:3", "so:3", "so:4", "sp:1", "sp:2"}) {
    CAPTURE(d);
    const auto a = alg(d);
    const auto g = support::oracle_for(a->spec());
    const int maxM = g.size() <= 3 ? 3 : 2;
    for (int M = 0; M <= maxM; ++M)
      for (int i : g.labels)
        for (int j : g.labels) CHECK(support::to_oracle(matrix_power_element(a, M, i, j)) == power_oracle(a, g, M, i, j));
  }
}

TEST_CASE("casimir examples") {
  const auto gl2 = alg("gl:2");
  CHECK(casimir(gl2, 1) == parse_polynomial(gl2, "X[1,1] + X[2,2]"));
  const auto c2 = casimir(gl2, 2);
  // X21X12 = X12X21 - X11 + X22 fixes the sign of the linear part.
  CHECK(c2 == parse_polynomial(gl2, "X[1,1].X[1,1] + 2*X[1,2].X[2,1] + X[2,2].X[2,2] + -1*X[1,1] + X[2,2]"));
  for (const auto& [i, j] : gl2->spec().generators()) CHECK(commutator(c2, X(gl2, i, j)).is_zero());
  CHECK(casimir(alg("so:3"), 1).is_zero());
  // Odd traces lose their top degree in U(so), U(sp) but keep a central lower part.
  const auto so5 = alg("so:5");
  const auto c3 = casimir(so5, 3);
  CHECK(c3.homogeneous_part(3).is_zero());
  for (const auto& [i, j] : so5->spec().generators()) CHECK(commutator(c3, X(so5, i, j)).is_zero());
  CHECK(casimir(alg("sp:2"), 1).is_zero());
  CHECK_FALSE(casimir(alg("sp:2"), 2).is_zero());
}

TEST_CASE("casimirs are central") {
  for (const char* d : {"gl:2", "gl:3", "so:3", "so:4", "sp:1"}) {
    CAPTURE(d);
    const auto a = alg(d);
    for (int M = 1; M <= 4; ++M) {
      const auto c = casimir(a, M);
      for (const auto& [i, j] : a->spec().generators()) CHECK(commutator(c, X(a, i, j)).is_zero());
    }
  }
}

TEST_CASE("tensoriality is exact for small algebras") {
  for (const char* d : {"gl:2", "so:3", "sp:1"}) {
    CAPTURE(d);
    const auto a = alg(d);
    const auto& I = a->spec().index_set();
    for (int M = 0; M <= 3; ++M)
      for (int i : I)
        for (int j : I)
          for (int k : I)
            for (int l : I) CHECK(tensorial_residual(a, M, i, j, k, l).is_zero());
  }
}

TEST_CASE("shift_generator examples") {
  const auto gl3 = alg("gl:3");
  const auto A = diag({1, 2, 0});
  CHECK(shift_generator(gl3, A, 1) == parse_polynomial(gl3, "X[1,1] + 2*X[2,2]"));
  CHECK(shift_generator(gl3, A, 2) == matrix_power_element(gl3, 2, 1, 1) + Rational(2) * matrix_power_element(gl3, 2, 2, 2));
  const auto gl2 = alg("gl:2");
  CHECK(shift_generator(gl2, unit(2, 1, 0), 1) == X(gl2, 1, 2));
  CHECK(shift_generator(gl2, RationalMatrix::identity(2), 3) == casimir(gl2, 3));
}

TEST_CASE("symbolic shift specializes to the numeric one") {
  const auto gl2 = alg("gl:2");
  const auto sym = parse_shift(gl2->spec(), "sym-diag:a1,a2");
  const auto p = shift_generator(gl2, sym, 2);
  const auto numeric = shift_generator(gl2, diag({3, -2}), 2);
  std::function<Rational(const CommPoly&)> at = [](const CommPoly& c) {
    const std::vector<Rational> pt{3, -2};
    return c.evaluate(pt);
  };
  auto specialized = map_coefficients<CommPoly, Rational>(p, at);
  CHECK(normal_form(specialized) == numeric);
}

TEST_CASE("shifted elements and Casimirs commute, spot checks") {
  const auto gl2 = alg("gl:2");
  CHECK(commutator(shift_generator(gl2, diag({1, 2}), 2), shift_generator(gl2, diag({1, 2}), 3)).is_zero());
  const auto so4 = alg("so:4");
  const auto bad = RationalMatrix::from_rows({{1, 2, 0, 3}, {0, 1, 5, 0}, {0, 0, 2, 1}, {4, 0, 0, 3}});
  CHECK_FALSE(commutator(shift_generator(so4, bad, 1), shift_generator(so4, bad, 2)).is_zero());
  const auto good = random_shift_matrix(so4->spec(), so4->spec().index_set(), -1, 3);
  CHECK(commutator(shift_generator(so4, good, 1), shift_generator(so4, good, 3)).is_zero());
}

TEST_CASE("stabilizer_basis dimensions") {
  const auto gl3 = parse_algebra("gl:3");
  CHECK(stabilizer_basis(gl3, diag({1, 1, 0})).size() == 5);
  CHECK(stabilizer_basis(gl3, diag({1, 2, 0})).size() == 3);
  const auto so4 = parse_algebra("so:4");
  const auto A = defining_matrix(so4, 1, 1);
  CHECK(rank(A) == 2);
  CHECK(is_semisimple(A));
  const auto basis = stabilizer_basis(so4, A);
  CHECK(basis.size() == 2);
  for (const auto& B : basis) {
    CHECK(in_matrix_algebra(so4, B));
    CHECK(commutator(A, B).is_zero());
  }
}

TEST_CASE("check_centralizer examples") {
  const auto gl3 = alg("gl:3");
  const auto A = diag({1, 1, 0});
  for (const auto& B : stabilizer_basis(gl3->spec(), A)) CHECK(check_centralizer(gl3, A, B, 2).is_zero());
  CHECK(check_centralizer(gl3, A, A, 3).is_zero());
  const auto gl2 = alg("gl:2");
  const auto A2 = diag({1, 2});
  const auto E12 = unit(2, 0, 1);
  CHECK(commutator(A2, E12) == Rational(-1) * E12);
  CHECK(check_centralizer(gl2, A2, E12, 2).is_zero());
  const auto so4 = alg("so:4");
  const auto S = random_shift_matrix(so4->spec(), so4->spec().index_set(), -1, 11);
  for (const auto& B : algebra_basis(so4->spec())) CHECK(check_centralizer(so4, S, B, 2).is_zero());
}

TEST_CASE("chain generators") {
  const auto gl3 = chain_generators(read_chain_file(ENVALG_TEST_DATA "/gl3.json"));
  CHECK(gl3.members.size() == 6);
  const auto sp2 = chain_generators(read_chain_file(ENVALG_TEST_DATA "/sp2.json"));
  CHECK(sp2.members.size() == 6);
  const auto so4 = chain_generators(read_chain_file(ENVALG_TEST_DATA "/so4.json"));
  CHECK(so4.members.size() == 5);
  for (const auto* fam : {&gl3, &sp2, &so4})
    for (std::size_t a = 0; a < fam->members.size(); ++a)
      for (std::size_t b = a + 1; b < fam->members.size(); ++b)
        CHECK(commutator(fam->members[a].element, fam->members[b].element).is_zero());
}

TEST_CASE("invalid chains are rejected") {
  CHECK_THROWS_AS(chain_levels(read_chain_file(ENVALG_TEST_DATA "/invalid_step.json")), std::invalid_argument);
  // A one-step drop from so(4) to so(3) has no symmetric label block.
  CHECK_THROWS_AS(chain_levels(parse_chain_json(R"({"algebra":"so:4","steps":[1,1],"shifts":[null,null]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(chain_levels(parse_chain_json(R"({"algebra":"gl:3","steps":[2],"shifts":[null]})")),
                  std::invalid_argument);
  // Rank 1 shift.
  CHECK_THROWS_AS(chain_levels(parse_chain_json(R"({"algebra":"gl:3","steps":[2],"shifts":["diag:1,0,0"]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_chain_json("{not json"), std::invalid_argument);
}

TEST_CASE("auxiliary recursions on gl") {
  const auto gl2 = alg("gl:2");
  for (int i : {1, 2})
    for (int j : {1, 2})
      for (int k : {1, 2})
        for (int l : {1, 2}) CHECK(proposition1_residual(gl2, 2, 2, i, j, k, l).is_zero());
  const auto gl3 = alg("gl:3");
  CHECK(proposition2_residual(gl3, diag({1, 2, 0}), 2, 3).is_zero());
  CHECK(proposition2_intermediate_residual(gl3, diag({1, 2, 0}), 2, 3).is_zero());
  CHECK_THROWS(proposition1_residual(alg("so:3"), 1, 1, 1, 1, 1, 1));
}

TEST_CASE("power-expansion leading coefficient is (-1)^D") {
  const auto so3 = alg("so:3");
  const auto e = solve_central_expansion(so3, 2);
  REQUIRE(e.solvable);
  CHECK(e.leading_normalized);
  CHECK(e.coefficients.back() == QPoly::constant(so3, 1));
  for (int i : so3->spec().index_set())
    for (int j : so3->spec().index_set()) CHECK(proposition3_residual(so3, e, i, j).is_zero());
  const auto sp1 = alg("sp:1");
  const auto e3 = solve_central_expansion(sp1, 3);
  REQUIRE(e3.solvable);
  CHECK(e3.coefficients.back() == QPoly::constant(sp1, -1));
  CHECK(proposition4_derived_sign(so3->spec()) == 1);
  CHECK(proposition4_derived_sign(sp1->spec()) == -1);
}

}  // TEST_SUITE
