#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "envalg/comm_poly.hpp"
#include "envalg/lie_algebra.hpp"
#include "envalg/linalg.hpp"
#include "envalg/pbw.hpp"

namespace envalg {

/// Polynomial function on g*: variable k is the coordinate function of the
/// canonical generator with id k.
class ClassicalPolynomial {
 public:
  ClassicalPolynomial(AlgebraSpec spec, CommPoly poly = {}) : spec_(std::move(spec)), poly_(std::move(poly)) {}

  static ClassicalPolynomial coordinate(const AlgebraSpec& spec, int i, int j);

  const AlgebraSpec& spec() const { return spec_; }
  const CommPoly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }
  int degree() const { return poly_.degree(); }

  ClassicalPolynomial& operator+=(const ClassicalPolynomial& o);
  ClassicalPolynomial& operator-=(const ClassicalPolynomial& o);
  friend ClassicalPolynomial operator+(ClassicalPolynomial a, const ClassicalPolynomial& b) { return a += b; }
  friend ClassicalPolynomial operator-(ClassicalPolynomial a, const ClassicalPolynomial& b) { return a -= b; }
  friend ClassicalPolynomial operator*(const ClassicalPolynomial& a, const ClassicalPolynomial& b);
  friend ClassicalPolynomial operator*(const Rational& s, ClassicalPolynomial a) {
    a.poly_ *= s;
    return a;
  }
  friend bool operator==(const ClassicalPolynomial& a, const ClassicalPolynomial& b) {
    return a.spec_ == b.spec_ && a.poly_ == b.poly_;
  }

  /// "X[1,1]^2 + 2*X[1,2]*X[2,1]"-style text.
  std::string format() const;

 private:
  AlgebraSpec spec_;
  CommPoly poly_;
};

/// {f, g} = sum_{a,b} df/dx_a dg/dx_b sum_c c_{ab}^c x_c.
ClassicalPolynomial lie_poisson_bracket(const ClassicalPolynomial& f, const ClassicalPolynomial& g);

/// Commutative image of the top-degree part of a quantum element.
ClassicalPolynomial top_symbol(const QPoly& p);

/// Matrix of coordinate functions, M_ij = sign(i,j) x_{id(i,j)} (variables
/// shifted by `offset`), over the whole index set.
std::vector<CommPoly> coordinate_matrix(const AlgebraSpec& spec, std::size_t offset = 0);

/// Tr X^M as a function on g*.
ClassicalPolynomial casimir_classical(const AlgebraSpec& spec, int M);
/// Tr(A X^M) = sum A_ji (X^M)_ij.
ClassicalPolynomial shift_classical(const AlgebraSpec& spec, const RationalMatrix& a, int M);

/// S_A^{k,M}, k = 1..M, from Tr (X + lambda A)^M = sum_k S_A^{k,M} lambda^k
/// (k = 0 being Tr X^M); element k-1 of the result is S_A^{k,M}.
std::vector<ClassicalPolynomial> shift_expand(const AlgebraSpec& spec, int M, const RationalMatrix& a);

/// lambda^k coefficient of e_M(X + lambda A), e_M the M-th elementary
/// symmetric function of the eigenvalues (Faddeev-LeVerrier on the symbolic
/// matrix). Requires 1 <= k < M <= matrix size.
ClassicalPolynomial charpoly_shift_invariant(const AlgebraSpec& spec, int M, int k, const RationalMatrix& a);

/// Point of g* in generator coordinates.
struct PointOnDual {
  AlgebraSpec spec;
  std::vector<Rational> coordinates;
  RationalMatrix matrix() const { return coordinates_to_matrix(spec, coordinates); }
};

/// Integer coordinates uniform in [-bound, bound].
PointOnDual random_point(const AlgebraSpec& spec, std::mt19937_64& rng, int bound = 10);

/// Rank-2 point of g*: u v^T + w z^T (gl), v_i u_{-j} - u_i v_{-j} (so),
/// eps_j (u_i v_{-j} + v_i u_{-j}) (sp), with integer vectors in [-10, 10];
/// resampled until the matrix rank is exactly 2. Throws std::runtime_error
/// after `budget` failures.
PointOnDual random_rank2_point(const AlgebraSpec& spec, std::uint64_t seed, int budget = 64);

/// Exact partial derivatives in generator coordinates at a point.
std::vector<Rational> gradient(const ClassicalPolynomial& f, const PointOnDual& point);

/// Row-major rational list, e.g. "[[1,0],[0,-1/2]]".
std::string format_matrix(const RationalMatrix& m);

}  // namespace envalg
