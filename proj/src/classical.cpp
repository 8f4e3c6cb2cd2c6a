#include "envalg/classical.hpp"

#include <stdexcept>

namespace envalg {

namespace {

void require_same(const AlgebraSpec& a, const AlgebraSpec& b) {
  if (!(a == b)) throw std::invalid_argument("classical polynomials over different algebras: " + a.name() + ", " + b.name());
}

using PolyMatrix = std::vector<CommPoly>;

PolyMatrix multiply(const PolyMatrix& x, const PolyMatrix& y, std::size_t m) {
  PolyMatrix out(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const CommPoly& xik = x[i * m + k];
      if (xik.is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!y[k * m + j].is_zero()) out[i * m + j] += xik * y[k * m + j];
    }
  return out;
}

CommPoly trace(const PolyMatrix& x, std::size_t m) {
  CommPoly t;
  for (std::size_t i = 0; i < m; ++i) t += x[i * m + i];
  return t;
}

PolyMatrix constant_matrix(const RationalMatrix& a) {
  return PolyMatrix(a.data().begin(), a.data().end());
}

void check_shape(const AlgebraSpec& spec, const RationalMatrix& a) {
  const std::size_t m = spec.index_set().size();
  if (a.rows() != m || a.cols() != m) throw std::invalid_argument("shift matrix does not conform to the index set");
}

// X + lambda A with lambda the variable just after the coordinates.
PolyMatrix shifted_matrix(const AlgebraSpec& spec, const RationalMatrix& a, std::size_t lambda) {
  PolyMatrix y = coordinate_matrix(spec);
  const CommPoly l = CommPoly::variable(lambda);
  for (std::size_t e = 0; e < y.size(); ++e)
    if (sgn(a.data()[e]) != 0) y[e] += l * a.data()[e];
  return y;
}

}  // namespace

ClassicalPolynomial ClassicalPolynomial::coordinate(const AlgebraSpec& spec, int i, int j) {
  auto s = spec.slot(i, j);
  if (s.id < 0) return ClassicalPolynomial(spec);
  return ClassicalPolynomial(spec, CommPoly::variable(static_cast<std::size_t>(s.id)) * Rational(s.sign));
}

ClassicalPolynomial& ClassicalPolynomial::operator+=(const ClassicalPolynomial& o) {
  require_same(spec_, o.spec_);
  poly_ += o.poly_;
  return *this;
}

ClassicalPolynomial& ClassicalPolynomial::operator-=(const ClassicalPolynomial& o) {
  require_same(spec_, o.spec_);
  poly_ -= o.poly_;
  return *this;
}

ClassicalPolynomial operator*(const ClassicalPolynomial& a, const ClassicalPolynomial& b) {
  require_same(a.spec_, b.spec_);
  return ClassicalPolynomial(a.spec_, a.poly_ * b.poly_);
}

std::string ClassicalPolynomial::format() const {
  if (poly_.is_zero()) return "0";
  return poly_.format([&](std::size_t v) { return spec_.generator_name(static_cast<int>(v)); });
}

ClassicalPolynomial lie_poisson_bracket(const ClassicalPolynomial& f, const ClassicalPolynomial& g) {
  require_same(f.spec(), g.spec());
  const AlgebraSpec& spec = f.spec();
  const std::size_t dim = spec.dimension();
  std::vector<CommPoly> df(dim), dg(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    df[a] = f.poly().derivative(a);
    dg[a] = g.poly().derivative(a);
  }
  CommPoly out;
  for (std::size_t a = 0; a < dim; ++a) {
    if (df[a].is_zero()) continue;
    for (std::size_t b = 0; b < dim; ++b) {
      if (dg[b].is_zero()) continue;
      const auto& terms = spec.structure(static_cast<int>(a), static_cast<int>(b));
      if (terms.empty()) continue;
      CommPoly bracket;
      for (const auto& [c, k] : terms) bracket += CommPoly::variable(static_cast<std::size_t>(c)) * Rational(k);
      out += df[a] * dg[b] * bracket;
    }
  }
  return ClassicalPolynomial(spec, std::move(out));
}

ClassicalPolynomial top_symbol(const QPoly& p) {
  CommPoly out;
  const int d = p.degree();
  for (const auto& [w, c] : p.terms()) {
    if (static_cast<int>(w.size()) != d) continue;
    CommPoly::Exponents e;
    for (Letter l : w) {
      if (e.size() <= l) e.resize(static_cast<std::size_t>(l) + 1, 0);
      ++e[l];
    }
    out.add_term(e, c);
  }
  return ClassicalPolynomial(p.spec(), std::move(out));
}

std::vector<CommPoly> coordinate_matrix(const AlgebraSpec& spec, std::size_t offset) {
  const std::size_t m = spec.index_set().size();
  std::vector<CommPoly> x(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      auto s = spec.slot_at(a, b);
      if (s.id >= 0) x[a * m + b] = CommPoly::variable(offset + static_cast<std::size_t>(s.id)) * Rational(s.sign);
    }
  return x;
}

ClassicalPolynomial casimir_classical(const AlgebraSpec& spec, int M) {
  if (M < 1) throw std::invalid_argument("Casimir degree must be >= 1");
  const std::size_t m = spec.index_set().size();
  const PolyMatrix x = coordinate_matrix(spec);
  PolyMatrix power = x;
  for (int p = 1; p < M; ++p) power = multiply(power, x, m);
  return ClassicalPolynomial(spec, trace(power, m));
}

ClassicalPolynomial shift_classical(const AlgebraSpec& spec, const RationalMatrix& a, int M) {
  check_shape(spec, a);
  const std::size_t m = spec.index_set().size();
  const PolyMatrix x = coordinate_matrix(spec);
  PolyMatrix power = constant_matrix(a);
  for (int p = 0; p < M; ++p) power = multiply(power, x, m);
  return ClassicalPolynomial(spec, trace(power, m));
}

std::vector<ClassicalPolynomial> shift_expand(const AlgebraSpec& spec, int M, const RationalMatrix& a) {
  if (M < 1) throw std::invalid_argument("shift expansion needs M >= 1");
  check_shape(spec, a);
  const std::size_t m = spec.index_set().size();
  const std::size_t lambda = spec.dimension();
  const PolyMatrix y = shifted_matrix(spec, a, lambda);
  PolyMatrix power = y;
  for (int p = 1; p < M; ++p) power = multiply(power, y, m);
  const CommPoly total = trace(power, m);
  std::vector<ClassicalPolynomial> out;
  for (int k = 1; k <= M; ++k)
    out.emplace_back(spec, total.coefficient_of(lambda, static_cast<unsigned>(k)));
  return out;
}

ClassicalPolynomial charpoly_shift_invariant(const AlgebraSpec& spec, int M, int k, const RationalMatrix& a) {
  const std::size_t m = spec.index_set().size();
  if (k < 1 || k >= M || M > static_cast<int>(m))
    throw std::invalid_argument("charpoly shift invariant needs 1 <= k < M <= " + std::to_string(m));
  check_shape(spec, a);
  const std::size_t lambda = spec.dimension();
  const PolyMatrix y = shifted_matrix(spec, a, lambda);
  // Faddeev-LeVerrier: N_1 = I, c_1 = -tr(Y); N_r = Y N_{r-1} + c_{r-1} I, c_r = -tr(Y N_r)/r,
  // with det(tI - Y) = t^m + c_1 t^{m-1} + ... and e_r(Y) = (-1)^r c_r.
  PolyMatrix nr(m * m);
  for (std::size_t i = 0; i < m; ++i) nr[i * m + i] = CommPoly(1);
  CommPoly cr;
  for (int r = 1; r <= M; ++r) {
    if (r > 1) {
      nr = multiply(y, nr, m);
      for (std::size_t i = 0; i < m; ++i) nr[i * m + i] += cr;
    }
    cr = trace(multiply(y, nr, m), m) * Rational(-1, r);
  }
  CommPoly e = M % 2 == 0 ? cr : -cr;
  return ClassicalPolynomial(spec, e.coefficient_of(lambda, static_cast<unsigned>(k)));
}

PointOnDual random_point(const AlgebraSpec& spec, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  PointOnDual p{spec, std::vector<Rational>(spec.dimension())};
  for (auto& c : p.coordinates) c = dist(rng);
  return p;
}

PointOnDual random_rank2_point(const AlgebraSpec& spec, std::uint64_t seed, int budget) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-10, 10);
  const auto& labels = spec.index_set();
  const std::size_t m = labels.size();
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<Rational> u(m), v(m), w(m), z(m);
    for (std::size_t a = 0; a < m; ++a) {
      u[a] = dist(rng);
      v[a] = dist(rng);
      w[a] = dist(rng);
      z[a] = dist(rng);
    }
    RationalMatrix x(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const int j = labels[b];
        switch (spec.family()) {
          case Family::GL:
            x(a, b) = u[a] * v[b] + w[a] * z[b];
            break;
          case Family::SO_even:
          case Family::SO_odd: {
            const std::size_t nb = spec.position(-j);
            x(a, b) = v[a] * u[nb] - u[a] * v[nb];
            break;
          }
          case Family::SP: {
            const std::size_t nb = spec.position(-j);
            x(a, b) = spec.epsilon(j) * (u[a] * v[nb] + v[a] * u[nb]);
            break;
          }
        }
      }
    if (rank(x) == 2 && in_matrix_algebra(spec, x)) return {spec, matrix_to_coordinates(spec, x)};
  }
  throw std::runtime_error("no rank-2 point of " + spec.name() + " after " + std::to_string(budget) + " attempts");
}

std::vector<Rational> gradient(const ClassicalPolynomial& f, const PointOnDual& point) {
  require_same(f.spec(), point.spec);
  std::vector<Rational> out(f.spec().dimension());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = f.poly().derivative(a).evaluate(point.coordinates);
  return out;
}

std::string format_matrix(const RationalMatrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? "," : "") + m(r, c).get_str();
    out += "]";
  }
  return out + "]";
}

}  // namespace envalg
