#include <doctest.h>

#include "envalg/lie_algebra.hpp"
#include "support.hpp"

using namespace envalg;

namespace {

const char* const kDesignators[] = {"gl:1", "gl:2", "gl:3", "so:2", "so:3", "so:4", "so:5", "sp:1", "sp:2"};

std::vector<IdTerm> as_id_terms(const oracle::Algebra& g, int a, int b) {
  std::vector<IdTerm> out;
  for (const auto& [e, c] : g.bracket[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) {
    REQUIRE(c.get_den() == 1);
    out.emplace_back(e, static_cast<int>(c.get_num().get_si()));
  }
  return out;
}

}  // namespace

TEST_SUITE("lie_algebra") {

TEST_CASE("index sets and epsilon") {
  const auto gl2 = make_algebra(Family::GL, 2);
  CHECK(gl2.index_set() == std::vector<int>{1, 2});
  CHECK(gl2.epsilon(1) == 1);
  CHECK(gl2.epsilon(2) == 1);

  const auto so3 = make_algebra(Family::SO_odd, 1);
  CHECK(so3.index_set() == std::vector<int>{-1, 0, 1});
  for (int j : so3.index_set()) CHECK(so3.epsilon(j) == 1);

  const auto sp1 = make_algebra(Family::SP, 1);
  CHECK(sp1.index_set() == std::vector<int>{-1, 1});
  CHECK(sp1.epsilon(-1) == -1);
  CHECK(sp1.epsilon(1) == 1);

  for (const char* d : kDesignators) {
    const auto spec = parse_algebra(d);
    CHECK(spec.designator() == d);
    for (int j : spec.index_set()) {
      if (!spec.is_symmetric_family() || j == 0) continue;
      CHECK(spec.epsilon(j) * spec.epsilon(-j) == (spec.family() == Family::SP ? -1 : 1));
    }
  }
}

TEST_CASE("canonicalize examples") {
  // X[0,-1] = -X[1,0]; the kept representative is the pair that comes first
  // lexicographically over I = (-1, 0, 1), here (0,-1).
  const auto so3 = parse_algebra("so:3");
  const auto a = canonicalize(so3, 1, 0);
  CHECK(a.i == 0);
  CHECK(a.j == -1);
  CHECK(a.sign == -1);
  CHECK_FALSE(a.canonical);
  const auto a2 = canonicalize(so3, 0, -1);
  CHECK(a2.canonical);
  CHECK(a2.sign == 1);
  CHECK(canonicalize(so3, 1, -1).is_zero());

  const auto sp1 = parse_algebra("sp:1");
  const auto b = canonicalize(sp1, 1, -1);
  CHECK(b.i == 1);
  CHECK(b.j == -1);
  CHECK(b.sign == 1);

  const auto gl3 = parse_algebra("gl:3");
  for (int i : gl3.index_set())
    for (int j : gl3.index_set()) {
      const auto r = canonicalize(gl3, i, j);
      CHECK(r.canonical);
      CHECK(r.sign == 1);
    }
}

TEST_CASE("exactly one of a pair is canonical") {
  for (const char* d : {"so:3", "so:4", "so:5", "sp:1", "sp:2"}) {
    const auto spec = parse_algebra(d);
    for (int i : spec.index_set())
      for (int j : spec.index_set()) {
        const auto r = canonicalize(spec, i, j);
        const auto partner = canonicalize(spec, -j, -i);
        if (i == -j) {
          CHECK(r.canonical);
          CHECK(r.is_zero() == (spec.family() != Family::SP));
          continue;
        }
        CHECK(r.canonical != partner.canonical);
        CHECK(r.i == partner.i);
        CHECK(r.j == partner.j);
      }
  }
}

TEST_CASE("bracket_structure examples") {
  const auto gl2 = parse_algebra("gl:2");
  auto e = bracket_structure(gl2, {1, 1}, {1, 2});
  REQUIRE(e.size() == 1);
  CHECK(e[0].generator.i == 1);
  CHECK(e[0].generator.j == 2);
  CHECK(e[0].coefficient == 1);

  e = bracket_structure(gl2, {1, 2}, {2, 1});
  REQUIRE(e.size() == 2);
  CHECK((e[0].generator.i == 1 && e[0].generator.j == 1 && e[0].coefficient == 1));
  CHECK((e[1].generator.i == 2 && e[1].generator.j == 2 && e[1].coefficient == -1));

  // [X11, X10] = X10 with X10 = -X[0,-1] canonical.
  const auto so3 = parse_algebra("so:3");
  e = bracket_structure(so3, {1, 1}, {1, 0});
  REQUIRE(e.size() == 1);
  CHECK(e[0].generator.i == 0);
  CHECK(e[0].generator.j == -1);
  CHECK(e[0].coefficient == -1);
  const auto ref = canonicalize(so3, 1, 0);
  CHECK(e[0].coefficient == ref.sign);
}

TEST_CASE("structure constants match defining-matrix commutators") {
  for (const char* d : kDesignators) {
    CAPTURE(d);
    const auto spec = parse_algebra(d);
    const auto g = support::oracle_for(spec);
    REQUIRE(spec.generators() == g.gens);
    const int dim = static_cast<int>(spec.dimension());
    for (int a = 0; a < dim; ++a) {
      const auto [i, j] = g.gens[static_cast<std::size_t>(a)];
      auto m = defining_matrix(spec, i, j);
      for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c) CHECK(m(r, c) == g.mats[static_cast<std::size_t>(a)][r][c]);
      for (int b = 0; b < dim; ++b) CHECK(spec.structure(a, b) == as_id_terms(g, a, b));
    }
  }
}

TEST_CASE("Jacobi identity, exhaustive for n <= 2") {
  for (const char* d : {"gl:1", "gl:2", "so:3", "so:4", "sp:1", "sp:2"}) {
    CAPTURE(d);
    const auto spec = parse_algebra(d);
    const int dim = static_cast<int>(spec.dimension());
    auto nested = [&](int x, int y, int z, std::vector<long>& acc) {
      for (const auto& [e, c] : spec.structure(y, z))
        for (const auto& [f, c2] : spec.structure(x, e)) acc[static_cast<std::size_t>(f)] += long{c} * c2;
    };
    for (int x = 0; x < dim; ++x)
      for (int y = 0; y < dim; ++y)
        for (int z = 0; z < dim; ++z) {
          std::vector<long> acc(static_cast<std::size_t>(dim), 0);
          nested(x, y, z, acc);
          nested(y, z, x, acc);
          nested(z, x, y, acc);
          for (long v : acc) CHECK(v == 0);
        }
  }
}

TEST_CASE("dimension and index") {
  CHECK(dimension_and_index(parse_algebra("gl:3")) == std::pair{9, 3});
  CHECK(dimension_and_index(parse_algebra("so:4")) == std::pair{6, 2});
  CHECK(dimension_and_index(parse_algebra("sp:2")) == std::pair{10, 2});
  for (int n = 1; n <= 6; ++n) {
    CHECK(dimension_and_index(make_algebra(Family::GL, n)) == std::pair{n * n, n});
    CHECK(dimension_and_index(make_algebra(Family::SO_odd, n)) == std::pair{n * (2 * n + 1), n});
    CHECK(dimension_and_index(make_algebra(Family::SO_even, n)) == std::pair{n * (2 * n - 1), n});
    CHECK(dimension_and_index(make_algebra(Family::SP, n)) == std::pair{n * (2 * n + 1), n});
  }
}

TEST_CASE("index set size equals the matrix dimension") {
  for (int n = 1; n <= 4; ++n) {
    CHECK(make_algebra(Family::GL, n).matrix_size() == n);
    CHECK(make_algebra(Family::SO_odd, n).matrix_size() == 2 * n + 1);
    CHECK(make_algebra(Family::SO_even, n).matrix_size() == 2 * n);
    CHECK(make_algebra(Family::SP, n).matrix_size() == 2 * n);
  }
}

TEST_CASE("coordinates round-trip through matrices") {
  for (const char* d : kDesignators) {
    const auto spec = parse_algebra(d);
    std::vector<Rational> x;
    for (std::size_t a = 0; a < spec.dimension(); ++a) x.push_back(oracle::fraction(static_cast<long>(a) - 3, 2));
    const auto m = coordinates_to_matrix(spec, x);
    CHECK(in_matrix_algebra(spec, m));
    CHECK(matrix_to_coordinates(spec, m) == x);
    CHECK(sigma_transpose(spec, sigma_transpose(spec, m)) == m);
  }
}

TEST_CASE("malformed designators and arguments") {
  CHECK_THROWS_AS(make_algebra(Family::GL, 0), std::invalid_argument);
  CHECK_THROWS_AS(parse_algebra("gl:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_algebra("su:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_algebra("gl3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_algebra("gl:x"), std::invalid_argument);
  CHECK_THROWS_AS(canonicalize(parse_algebra("gl:2"), 3, 1), std::out_of_range);
  CHECK_THROWS(canonicalize(parse_algebra("so:4"), 0, 1));
}

}  // TEST_SUITE
