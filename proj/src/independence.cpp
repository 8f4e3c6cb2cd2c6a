#include "envalg/independence.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace envalg {

namespace {

std::vector<Rational> flatten(const RationalMatrix& m) { return m.data(); }

// Element of g representing H -> Tr(G H) on g: G itself for gl, its
// trace-orthogonal projection (G - sigma G)/2 for so/sp.
RationalMatrix project_to_algebra(const AlgebraSpec& spec, const RationalMatrix& g) {
  if (!spec.is_symmetric_family()) return g;
  return Rational(1, 2) * (g - sigma_transpose(spec, g));
}

// Tr (X + lambda A)^M with X in variables [0, d), A in [d, 2d), lambda = 2d.
const CommPoly& pencil_trace(const AlgebraSpec& spec, int M) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, int>, CommPoly> memo;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(spec.designator(), M);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const std::size_t d = spec.dimension();
  const std::size_t m = spec.index_set().size();
  auto y = coordinate_matrix(spec, 0);
  const auto a = coordinate_matrix(spec, d);
  const CommPoly lambda = CommPoly::variable(2 * d);
  for (std::size_t e = 0; e < y.size(); ++e)
    if (!a[e].is_zero()) y[e] += lambda * a[e];
  std::vector<CommPoly> p = y;
  for (int r = 1; r < M; ++r) {
    std::vector<CommPoly> next(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) {
        if (p[i * m + k].is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j)
          if (!y[k * m + j].is_zero()) next[i * m + j] += p[i * m + k] * y[k * m + j];
      }
    p = std::move(next);
  }
  CommPoly t;
  for (std::size_t i = 0; i < m; ++i) t += p[i * m + i];
  return memo.emplace(key, std::move(t)).first->second;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RankCertificate jacobian_rank(const std::vector<ClassicalPolynomial>& family, const std::vector<std::string>& labels,
                              int trials, std::uint64_t seed, std::optional<std::size_t> target,
                              const std::string& family_name) {
  if (family.empty()) throw std::invalid_argument("Jacobian rank of an empty family");
  if (trials < 1) throw std::invalid_argument("Jacobian rank needs at least one trial");
  const AlgebraSpec& spec = family.front().spec();
  for (const auto& f : family)
    if (!(f.spec() == spec)) throw std::invalid_argument("family mixes algebras");
  const std::size_t dim = spec.dimension();

  std::vector<std::vector<CommPoly>> partials(family.size(), std::vector<CommPoly>(dim));
  for (std::size_t r = 0; r < family.size(); ++r)
    for (std::size_t a = 0; a < dim; ++a) partials[r][a] = family[r].poly().derivative(a);

  RankCertificate cert;
  cert.family = family_name;
  cert.labels = labels;
  cert.seed = seed;
  if (target) {
    cert.target = *target;
  } else {
    auto [d, ind] = dimension_and_index(spec);
    cert.target = static_cast<std::size_t>((d + ind) / 2);
  }
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = trial_seed(seed, static_cast<std::size_t>(t));
    std::mt19937_64 rng(s);
    PointOnDual point = random_point(spec, rng);
    RationalMatrix jac(family.size(), dim);
    for (std::size_t r = 0; r < family.size(); ++r)
      for (std::size_t a = 0; a < dim; ++a) jac(r, a) = partials[r][a].evaluate(point.coordinates);
    cert.trial_seeds.push_back(s);
    cert.trial_points.push_back(point.coordinates);
    cert.trial_ranks.push_back(rank(jac));
  }
  cert.max_rank = *std::max_element(cert.trial_ranks.begin(), cert.trial_ranks.end());
  cert.stable = std::all_of(cert.trial_ranks.begin(), cert.trial_ranks.end(),
                            [&](std::size_t r) { return r == cert.max_rank; });
  cert.pass = cert.max_rank == cert.target;
  return cert;
}

RankCertificate transcendency_check(const CommutativeFamily& family, int trials, std::uint64_t seed) {
  std::vector<ClassicalPolynomial> symbols;
  std::vector<std::string> labels;
  for (const auto& m : family.members) {
    symbols.push_back(top_symbol(m.element));
    labels.push_back(m.label);
  }
  return jacobian_rank(symbols, labels, trials, seed, std::nullopt, family.name);
}

DualityResult brailov_duality(const AlgebraSpec& spec, int M, int k, const PointOnDual& x, const PointOnDual& a) {
  if (k < 1 || k >= M) throw std::invalid_argument("duality needs 1 <= k < M");
  if (!(x.spec == spec) || !(a.spec == spec)) throw std::invalid_argument("points belong to another algebra");
  const std::size_t d = spec.dimension();
  const CommPoly& total = pencil_trace(spec, M);
  std::vector<Rational> point(x.coordinates);
  point.insert(point.end(), a.coordinates.begin(), a.coordinates.end());
  // S_X^{j,M}(A) is the lambda^{M-j} coefficient of the same pencil trace.
  auto grad = [&](unsigned lambda_power, std::size_t offset) {
    const CommPoly part = total.coefficient_of(2 * d, lambda_power);
    std::vector<Rational> g(d);
    for (std::size_t v = 0; v < d; ++v) g[v] = part.derivative(offset + v).evaluate(point);
    return g;
  };
  DualityResult r;
  r.M = M;
  r.k = k;
  r.lhs = grad(static_cast<unsigned>(k), 0);
  r.rhs_plain = grad(static_cast<unsigned>(k), d);
  r.holds_plain = r.lhs == r.rhs_plain;
  if (M - k - 1 >= 0) {
    r.rhs_shifted = grad(static_cast<unsigned>(k + 1), d);
    r.holds_shifted = r.lhs == *r.rhs_shifted;
  }
  return r;
}

std::size_t stabilizer_index(const AlgebraSpec& spec, const RationalMatrix& a, int trials, std::uint64_t seed) {
  const auto basis = stabilizer_basis(spec, a);
  const std::size_t n = basis.size();
  std::size_t best = 0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, static_cast<std::size_t>(t)));
    const RationalMatrix xi = random_point(spec, rng).matrix();
    RationalMatrix form(n, n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        Rational v = (xi * commutator(basis[p], basis[q])).trace();
        form(p, q) = v;
        form(q, p) = -v;
      }
    best = std::max(best, rank(form));
  }
  return n - best;
}

std::string StabilizerBlocks::format() const {
  std::string out;
  for (const auto& b : blocks) out += (out.empty() ? "" : "+") + b;
  return out.empty() ? "0" : out;
}

StabilizerBlocks stabilizer_blocks(const AlgebraSpec& spec, const RationalMatrix& a) {
  const std::size_t m = a.rows();
  if (rank(a) != 2 || !is_semisimple(a)) throw std::invalid_argument("block decomposition needs a rank-2 semisimple matrix");
  StabilizerBlocks out;
  auto add = [&](const std::string& name, std::size_t dim, std::size_t ind) {
    out.blocks.push_back(name);
    out.dimension += dim;
    out.index += ind;
  };
  const std::size_t k = m - 2;  // kernel dimension
  if (!spec.is_symmetric_family()) {
    // Nonzero eigenvalues are the roots of t^2 + c1 t + c0.
    const auto c = characteristic_polynomial(a);
    const Rational disc = c[m - 1] * c[m - 1] - 4 * c[m - 2];
    if (sgn(disc) == 0) {
      add("gl(2)", 4, 2);
    } else {
      add("gl(1)", 1, 1);
      add("gl(1)", 1, 1);
    }
    if (k > 0) add("gl(" + std::to_string(k) + ")", k * k, k);
    return out;
  }
  add("gl(1)", 1, 1);
  if (k == 0) return out;
  if (spec.family() == Family::SP) {
    const std::size_t r = k / 2;
    add("sp(" + std::to_string(r) + ")", r * (2 * r + 1), r);
  } else if (k >= 2) {
    add("so(" + std::to_string(k) + ")", k * (k - 1) / 2, k / 2);
  }
  return out;
}

TangentIntersection tangent_intersection(const AlgebraSpec& spec, const RationalMatrix& a, int trials,
                                         std::uint64_t seed) {
  const std::size_t m = spec.index_set().size();
  if (a.rows() != m || a.cols() != m) throw std::invalid_argument("shift matrix does not conform to the index set");
  if (!in_matrix_algebra(spec, a)) throw std::invalid_argument("shift matrix is not in " + spec.name());
  if (rank(a) != 2) throw std::invalid_argument("tangent check needs a rank-2 shift matrix");
  if (!is_semisimple(a)) throw std::invalid_argument("tangent check needs a semisimple shift matrix");
  if (trials < 1) throw std::invalid_argument("tangent check needs at least one trial");

  TangentIntersection out;
  auto [dim_g, ind_g] = dimension_and_index(spec);
  out.dim_g = static_cast<std::size_t>(dim_g);
  out.ind_g = static_cast<std::size_t>(ind_g);
  out.dim_stabilizer = stabilizer_basis(spec, a).size();
  out.ind_stabilizer = stabilizer_index(spec, a, trials, seed);
  const StabilizerBlocks blocks = stabilizer_blocks(spec, a);
  out.ind_stabilizer_blocks = blocks.index;
  out.stabilizer_blocks = blocks.format();
  if (blocks.dimension != out.dim_stabilizer)
    throw std::logic_error("stabilizer dimension " + std::to_string(out.dim_stabilizer) + " disagrees with blocks " +
                           out.stabilizer_blocks);
  out.half_orbit_dim = (out.dim_g - out.dim_stabilizer) / 2;

  std::vector<std::vector<Rational>> orbit, stabilizer;
  for (const auto& b : algebra_basis(spec)) orbit.push_back(flatten(commutator(a, b)));
  for (const auto& b : stabilizer_basis(spec, a)) stabilizer.push_back(flatten(b));
  const std::size_t width = m * m;

  const int max_power = static_cast<int>(m * m);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = trial_seed(seed ^ 0x7a6e67656e74ULL, static_cast<std::size_t>(t));
    std::mt19937_64 rng(s);
    const RationalMatrix x = random_point(spec, rng).matrix();
    std::vector<RationalMatrix> powers{RationalMatrix::identity(m)};
    for (int e = 1; e <= max_power; ++e) powers.push_back(powers.back() * x);
    std::vector<std::vector<Rational>> grads;
    for (int M = 1; M <= max_power; ++M) {
      RationalMatrix g(m, m);
      for (int p = 0; p < M; ++p) g = g + powers[M - 1 - p] * a * powers[p];
      grads.push_back(flatten(project_to_algebra(spec, g)));
    }
    for (int N = 1; N <= static_cast<int>(m); ++N)
      grads.push_back(flatten(project_to_algebra(spec, Rational(N) * powers[N - 1])));
    out.trial_seeds.push_back(s);
    out.trial_intersection_dims.push_back(intersection_dimension(grads, orbit, width));
    auto with_stabilizer = grads;
    with_stabilizer.insert(with_stabilizer.end(), stabilizer.begin(), stabilizer.end());
    out.trial_projection_dims.push_back(rank(rows_matrix(with_stabilizer, width)) - stabilizer.size());
  }
  auto max_of = [](const std::vector<std::size_t>& v) { return *std::max_element(v.begin(), v.end()); };
  out.projection_dim = max_of(out.trial_projection_dims);
  out.intersection_dim = max_of(out.trial_intersection_dims);
  out.pass = out.projection_dim == out.half_orbit_dim;
  return out;
}

}  // namespace envalg
