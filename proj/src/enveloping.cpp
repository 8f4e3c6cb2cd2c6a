#include "envalg/enveloping.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace envalg {

// ---------------------------------------------------------------- powers

MatrixPowers::MatrixPowers(EnvelopingPtr algebra, std::vector<int> labels)
    : algebra_(std::move(algebra)), labels_(std::move(labels)) {
  for (int l : labels_) algebra_->spec().position(l);
}

std::shared_ptr<MatrixPowers> MatrixPowers::of(const EnvelopingPtr& algebra, const std::vector<int>& labels) {
  static std::mutex registry_mutex;
  static std::map<std::pair<const UniversalEnveloping*, std::vector<int>>, std::shared_ptr<MatrixPowers>> registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[{algebra.get(), labels}];
  if (!slot) slot = std::make_shared<MatrixPowers>(algebra, labels);
  return slot;
}

std::size_t MatrixPowers::position(int label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("label " + std::to_string(label) + " outside the power block");
  return static_cast<std::size_t>(it - labels_.begin());
}

const QPoly& MatrixPowers::entry(int M, int i, int j) { return entry_at(M, position(i), position(j)); }

const QPoly& MatrixPowers::entry_at(int M, std::size_t a, std::size_t b) {
  if (M < 0) throw std::invalid_argument("matrix power exponent must be >= 0, got " + std::to_string(M));
  std::lock_guard lock(mutex_);
  extend_to(M);
  return table_[static_cast<std::size_t>(M)][a * size() + b];
}

void MatrixPowers::extend_to(int M) {
  const std::size_t m = size();
  const AlgebraSpec& spec = algebra_->spec();
  while (static_cast<int>(table_.size()) <= M) {
    std::vector<QPoly> next(m * m, QPoly(algebra_));
    if (table_.empty()) {
      for (std::size_t a = 0; a < m; ++a) next[a * m + a] = QPoly::constant(algebra_, 1);
    } else {
      const auto& prev = table_.back();
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t b = 0; b < m; ++b) {
          auto slot = spec.slot(labels_[c], labels_[b]);
          if (slot.id < 0) continue;
          for (std::size_t a = 0; a < m; ++a) {
            const QPoly& left = prev[a * m + c];
            if (left.is_zero()) continue;
            QPoly term = multiply_generator(left, slot.id);
            if (slot.sign != 1) term *= Rational(slot.sign);
            next[a * m + b] += term;
          }
        }
    }
    table_.push_back(std::move(next));
  }
}

QPoly matrix_power_element(const EnvelopingPtr& algebra, int M, int i, int j) {
  return MatrixPowers::of(algebra)->entry(M, i, j);
}

QPoly casimir(const EnvelopingPtr& algebra, int M) { return casimir(algebra, M, algebra->spec().index_set()); }

QPoly casimir(const EnvelopingPtr& algebra, int M, const std::vector<int>& labels) {
  if (M < 1) throw std::invalid_argument("Casimir degree must be >= 1");
  auto powers = MatrixPowers::of(algebra, labels);
  QPoly out(algebra);
  for (std::size_t a = 0; a < labels.size(); ++a) out += powers->entry_at(M, a, a);
  return out;
}

QPoly shift_generator(const EnvelopingPtr& algebra, const RationalMatrix& a, int M, const std::vector<int>& labels) {
  if (a.rows() != labels.size() || a.cols() != labels.size())
    throw std::invalid_argument("shift matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                ", label block has " + std::to_string(labels.size()) + " labels");
  auto powers = MatrixPowers::of(algebra, labels);
  QPoly out(algebra);
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const Rational& c = a(j, i);
      if (sgn(c) == 0) continue;
      out += powers->entry_at(M, i, j) * c;
    }
  return out;
}

QPoly shift_generator(const EnvelopingPtr& algebra, const RationalMatrix& a, int M) {
  return shift_generator(algebra, a, M, algebra->spec().index_set());
}

ParamNCPoly shift_generator(const EnvelopingPtr& algebra, const ShiftMatrix& a, int M) {
  a.require_declared_sign();
  auto powers = MatrixPowers::of(algebra, a.labels());
  ParamNCPoly::TermTable table;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const CommPoly& c = a.entry(j, i);
      if (c.is_zero()) continue;
      for (const auto& [w, r] : powers->entry_at(M, i, j).terms()) {
        auto [it, inserted] = table.try_emplace(w);
        it->second += c * r;
      }
    }
  return ParamNCPoly::from_raw_terms(algebra, std::move(table));
}

QPoly linear_element(const EnvelopingPtr& algebra, const RationalMatrix& b) {
  // (BX) = sum B_ji X_ij is the M = 1 shift generator.
  return shift_generator(algebra, b, 1);
}

std::vector<RationalMatrix> algebra_basis(const AlgebraSpec& spec) {
  std::vector<RationalMatrix> out;
  for (const auto& [i, j] : spec.generators()) out.push_back(defining_matrix(spec, i, j));
  return out;
}

std::vector<RationalMatrix> stabilizer_basis(const AlgebraSpec& spec, const RationalMatrix& a) {
  const std::size_t m = spec.index_set().size();
  if (a.rows() != m || a.cols() != m) throw std::invalid_argument("shift matrix does not conform to index set");
  auto basis = algebra_basis(spec);
  RationalMatrix system(m * m, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    RationalMatrix br = commutator(a, basis[c]);
    for (std::size_t e = 0; e < m * m; ++e) system(e, c) = br.data()[e];
  }
  std::vector<RationalMatrix> out;
  for (const auto& v : nullspace(system)) {
    RationalMatrix b(m, m);
    for (std::size_t c = 0; c < basis.size(); ++c)
      if (sgn(v[c]) != 0) b = b + v[c] * basis[c];
    out.push_back(std::move(b));
  }
  return out;
}

int centralizer_factor(const AlgebraSpec& spec) { return spec.is_symmetric_family() ? 2 : 1; }

QPoly check_centralizer(const EnvelopingPtr& algebra, const RationalMatrix& a, const RationalMatrix& b, int N) {
  const QPoly lhs = commutator(linear_element(algebra, b), shift_generator(algebra, a, N));
  const QPoly rhs = shift_generator(algebra, commutator(a, b), N) * Rational(centralizer_factor(algebra->spec()));
  return lhs - rhs;
}

QPoly tensorial_residual(const EnvelopingPtr& algebra, int M, int i, int j, int k, int l) {
  const AlgebraSpec& spec = algebra->spec();
  auto powers = MatrixPowers::of(algebra);
  auto P = [&](int a, int b) -> const QPoly& { return powers->entry(M, a, b); };
  QPoly out = commutator(QPoly::generator(algebra, i, j), P(k, l));
  if (k == j) out -= P(i, l);
  if (i == l) out += P(k, j);
  if (spec.is_symmetric_family()) {
    const Rational ee = spec.epsilon(i) * spec.epsilon(j);
    if (j == -l) out -= P(k, -i) * ee;
    if (k == -i) out += P(-j, l) * ee;
  }
  return out;
}

// ---------------------------------------------------------------- chains

ChainSpec parse_chain_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("chain file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("algebra") || !doc["algebra"].is_string())
    throw std::invalid_argument("chain file needs a string field \"algebra\"");
  ChainSpec chain{parse_algebra(doc["algebra"].get<std::string>()), {}, {}, {}};
  if (doc.contains("steps")) {
    if (!doc["steps"].is_array()) throw std::invalid_argument("\"steps\" must be an array of integers");
    for (const auto& s : doc["steps"]) {
      if (!s.is_number_integer()) throw std::invalid_argument("\"steps\" must be an array of integers");
      chain.steps.push_back(s.get<int>());
    }
  }
  if (doc.contains("shifts")) {
    if (!doc["shifts"].is_array()) throw std::invalid_argument("\"shifts\" must be an array");
    for (const auto& s : doc["shifts"]) {
      if (s.is_null())
        chain.shifts.emplace_back(std::nullopt);
      else if (s.is_string())
        chain.shifts.emplace_back(s.get<std::string>());
      else
        throw std::invalid_argument("\"shifts\" entries must be designator strings or null");
    }
  }
  if (doc.contains("levels")) {
    if (!doc["levels"].is_array()) throw std::invalid_argument("\"levels\" must be an array of names");
    for (const auto& s : doc["levels"]) {
      if (!s.is_string()) throw std::invalid_argument("\"levels\" must be an array of names");
      chain.levels.push_back(s.get<std::string>());
    }
  }
  return chain;
}

ChainSpec read_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read chain file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_chain_json(ss.str());
}

namespace {

std::string level_name(Family family, int size) {
  switch (family) {
    case Family::GL: return "gl(" + std::to_string(size) + ")";
    case Family::SP: return "sp(" + std::to_string(size) + ")";
    default: return "so(" + std::to_string(size) + ")";
  }
}

std::vector<int> symmetric_block(const AlgebraSpec& spec, int matrix_size) {
  const int half = matrix_size / 2;
  std::vector<int> labels;
  for (int l : spec.index_set()) {
    if (l == 0 && matrix_size % 2 == 0) continue;
    if (l >= -half && l <= half) labels.push_back(l);
  }
  return labels;
}

ShiftMatrix resolve_shift(const AlgebraSpec& spec, const ChainLevel& level, const std::string& designator) {
  ShiftMatrix a = parse_shift(spec, level.labels, designator);
  const std::string where = "shift '" + designator + "' at " + level.name;
  if (!a.is_numeric()) throw std::invalid_argument(where + " must be numeric");
  if (matrix_rank(a) != 2) throw std::invalid_argument(where + " must have matrix rank 2");
  if (!is_semisimple(a)) throw std::invalid_argument(where + " must be semisimple");
  if (!in_matrix_algebra(a)) throw std::invalid_argument(where + " must lie in " + level.name);
  return a;
}

}  // namespace

std::vector<ChainLevel> chain_levels(const ChainSpec& chain) {
  const AlgebraSpec& spec = chain.algebra;
  std::vector<ChainLevel> levels;
  if (spec.family() == Family::SP) {
    const int n = spec.n();
    const std::size_t steps = chain.steps.size();
    bool all_ones = std::all_of(chain.steps.begin(), chain.steps.end(), [](int s) { return s == 1; });
    if (!all_ones || (steps != 0 && steps != static_cast<std::size_t>(n - 1) && steps != static_cast<std::size_t>(n)))
      throw std::invalid_argument("the sp chain is fixed: sp(n) > sp(n-1) > ... > sp(1) > gl(1) with unit steps");
    if (chain.shifts.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("the sp chain needs one shift per level sp(" + std::to_string(n) + ")..sp(1), got " +
                                  std::to_string(chain.shifts.size()));
    for (int r = n; r >= 1; --r) {
      ChainLevel level;
      level.name = level_name(Family::SP, r);
      level.size = r;
      level.step = 1;
      for (int l : spec.index_set())
        if (l >= -r && l <= r) level.labels.push_back(l);
      const auto& d = chain.shifts[static_cast<std::size_t>(n - r)];
      if (!d) throw std::invalid_argument("missing shift matrix at " + level.name);
      level.shift = resolve_shift(spec, level, *d);
      levels.push_back(std::move(level));
    }
  } else {
    const bool gl = spec.family() == Family::GL;
    int size = spec.matrix_size();
    const int floor = gl ? 0 : 2;
    if (chain.shifts.size() != chain.steps.size())
      throw std::invalid_argument("chain needs one shifts entry per step (null for steps of size 1)");
    for (std::size_t s = 0; s <= chain.steps.size(); ++s) {
      ChainLevel level;
      level.name = level_name(spec.family(), size);
      level.size = size;
      if (gl) {
        const auto& all = spec.index_set();
        level.labels.assign(all.end() - size, all.end());
      } else {
        level.labels = symmetric_block(spec, size);
      }
      if (s < chain.steps.size()) {
        const int k = chain.steps[s];
        if (k != 1 && k != 2)
          throw std::invalid_argument("chain step sizes must be 1 or 2, got " + std::to_string(k));
        if (size - k < floor)
          throw std::invalid_argument("chain steps run below " + level_name(spec.family(), floor));
        if (!gl && k == 1 && size % 2 == 0)
          throw std::invalid_argument("step so(" + std::to_string(size) + ") > so(" + std::to_string(size - 1) +
                                      ") is not realizable on the symmetric label block");
        level.step = k;
        const auto& d = chain.shifts[s];
        if (k == 2) {
          if (!d) throw std::invalid_argument("missing shift matrix at " + level.name);
          level.shift = resolve_shift(spec, level, *d);
        } else if (d) {
          throw std::invalid_argument("step of size 1 at " + level.name + " takes no shift (use null)");
        }
        size -= k;
      }
      if (level.size > 0) levels.push_back(std::move(level));
    }
    const int last = size;
    if (gl ? last > 1 : last != 2)
      throw std::invalid_argument("chain must end at " + std::string(gl ? "gl(1) or gl(0)" : "so(2)") + ", ends at " +
                                  level_name(spec.family(), last));
  }
  if (!chain.levels.empty()) {
    std::vector<std::string> names;
    for (const auto& l : levels) names.push_back(l.name);
    if (names != chain.levels) {
      std::string got;
      for (const auto& n : names) got += (got.empty() ? "" : ", ") + n;
      throw std::invalid_argument("declared levels do not match the steps; derived: " + got);
    }
  }
  return levels;
}

CommutativeFamily chain_generators(const ChainSpec& chain) {
  const AlgebraSpec& spec = chain.algebra;
  auto algebra = UniversalEnveloping::of(spec);
  CommutativeFamily family{"chain " + spec.name(), spec, {}};
  auto add = [&](const ChainLevel& level, const std::string& kind, const std::string& what, QPoly element) {
    family.members.push_back({level.name + ":" + what, kind + "@" + level.name, std::move(element)});
  };
  for (const auto& level : chain_levels(chain)) {
    const int m = level.size;
    switch (spec.family()) {
      case Family::GL:
        for (int M = 1; M <= m; ++M) add(level, "casimir", "(X^" + std::to_string(M) + ")", casimir(algebra, M, level.labels));
        if (level.step == 2)
          for (int N = 1; N < m; ++N)
            add(level, "shift", "(AX^" + std::to_string(N) + ")",
                shift_generator(algebra, level.shift->numeric(), N, level.labels));
        break;
      case Family::SO_even:
      case Family::SO_odd:
        if (m == 2) {
          add(level, "abelian", "X[1,1]", QPoly::generator(algebra, 1, 1));
          break;
        }
        for (int M = 2; M <= 2 * (m / 2); M += 2)
          add(level, "casimir", "(X^" + std::to_string(M) + ")", casimir(algebra, M, level.labels));
        if (level.step == 2)
          for (int N = 1; N < m; N += 2)
            add(level, "shift", "(AX^" + std::to_string(N) + ")",
                shift_generator(algebra, level.shift->numeric(), N, level.labels));
        break;
      case Family::SP:
        for (int M = 2; M <= 2 * m; M += 2)
          add(level, "casimir", "(X^" + std::to_string(M) + ")", casimir(algebra, M, level.labels));
        for (int k = 1; k < 2 * m; k += 2) {
          QPoly g = shift_generator(algebra, level.shift->numeric(), k, level.labels);
          if (m == 1)
            family.members.push_back({"gl(1):(AX^1)", "abelian@gl(1)", std::move(g)});
          else
            add(level, "shift", "(AX^" + std::to_string(k) + ")", std::move(g));
        }
        break;
    }
  }
  return family;
}

// ---------------------------------------------------------------- propositions

namespace {

void require_family(const AlgebraSpec& spec, bool symmetric, const char* what) {
  if (spec.is_symmetric_family() != symmetric)
    throw std::invalid_argument(std::string(what) + (symmetric ? " needs so or sp, got " : " needs gl, got ") +
                                spec.name());
}

QPoly gl_part(MatrixPowers& P, int M, int N, int i, int j, int k, int l) {
  QPoly out(P.algebra());
  for (int S = 1; S <= M; ++S) {
    out += multiply(P.entry(M + N - S, i, l), P.entry(S - 1, k, j));
    out -= multiply(P.entry(S - 1, i, l), P.entry(N + M - S, k, j));
  }
  return out;
}

std::string casimir_monomial_name(const std::vector<int>& degrees) {
  if (degrees.empty()) return "1";
  std::string out;
  std::size_t a = 0;
  while (a < degrees.size()) {
    std::size_t b = a;
    while (b < degrees.size() && degrees[b] == degrees[a]) ++b;
    if (!out.empty()) out += "*";
    out += "(X^" + std::to_string(degrees[a]) + ")";
    if (b - a > 1) out += "^" + std::to_string(b - a);
    a = b;
  }
  return out;
}

// Multisets of entries of `parts` (non-decreasing) with sum <= limit.
void enumerate_multisets(const std::vector<int>& parts, int limit, std::size_t from, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
  out.push_back(current);
  for (std::size_t t = from; t < parts.size(); ++t) {
    if (parts[t] > limit) continue;
    current.push_back(parts[t]);
    enumerate_multisets(parts, limit - parts[t], t, current, out);
    current.pop_back();
  }
}

// Appends the coefficient vector of p over a growing word index.
std::vector<std::pair<std::size_t, Rational>> coordinates(const QPoly& p, std::map<Word, std::size_t>& index) {
  std::vector<std::pair<std::size_t, Rational>> out;
  for (const auto& [w, c] : p.terms()) {
    auto [it, inserted] = index.try_emplace(w, index.size());
    out.emplace_back(it->second, c);
  }
  return out;
}

}  // namespace

QPoly proposition1_residual(const EnvelopingPtr& algebra, int M, int N, int i, int j, int k, int l) {
  require_family(algebra->spec(), false, "proposition 1");
  auto P = MatrixPowers::of(algebra);
  return commutator(P->entry(M, i, j), P->entry(N, k, l)) - gl_part(*P, M, N, i, j, k, l);
}

QPoly proposition2_residual(const EnvelopingPtr& algebra, const RationalMatrix& a, int M, int N) {
  require_family(algebra->spec(), false, "proposition 2");
  auto T = [&](int p, int q) { return contraction_t1(algebra, a, p, q); };
  QPoly out = T(M, N);
  for (int S = 1; S <= M; ++S)
    for (int P = 1; P <= S - 1; ++P) out -= T(P - 1, M + N - P - 1);
  return out;
}

QPoly proposition2_intermediate_residual(const EnvelopingPtr& algebra, const RationalMatrix& a, int M, int N) {
  require_family(algebra->spec(), false, "proposition 2");
  const auto& labels = algebra->spec().index_set();
  const std::size_t m = labels.size();
  auto P = MatrixPowers::of(algebra);
  QPoly out = contraction_t1(algebra, a, M, N);
  // sum_{ijkl} A_ji A_lk [(X^{S-1})_il, (X^{N+M-S})_kj] = sum_{il} [(X^{S-1})_il, sum_{jk} A_ji A_lk (X^{N+M-S})_kj]
  for (int S = 1; S <= M; ++S) {
    if (S - 1 == 0) continue;  // (X^0) is scalar
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t l = 0; l < m; ++l) {
        QPoly y(algebra);
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < m; ++k) {
            Rational c = a(j, i) * a(l, k);
            if (sgn(c) != 0) y += P->entry_at(N + M - S, k, j) * c;
          }
        out += commutator(P->entry_at(S - 1, i, l), y);
      }
  }
  return out;
}

CentralExpansion solve_central_expansion(const EnvelopingPtr& algebra, int degree) {
  const AlgebraSpec& spec = algebra->spec();
  require_family(spec, true, "the central expansion");
  if (degree < 0) throw std::invalid_argument("expansion degree must be >= 0");
  auto P = MatrixPowers::of(algebra);
  const auto& labels = spec.index_set();

  // Nonzero trace Casimirs and their products, pruned to an independent set.
  std::vector<int> parts;
  std::map<int, QPoly> casimirs;
  for (int q = 1; q <= degree; ++q) {
    QPoly c = casimir(algebra, q);
    if (!c.is_zero()) {
      parts.push_back(q);
      casimirs.emplace(q, std::move(c));
    }
  }
  std::vector<std::vector<int>> multisets;
  std::vector<int> current;
  enumerate_multisets(parts, degree, 0, current, multisets);
  std::stable_sort(multisets.begin(), multisets.end(), [](const auto& x, const auto& y) {
    int sx = 0, sy = 0;
    for (int v : x) sx += v;
    for (int v : y) sy += v;
    return sx < sy;
  });
  struct Monomial {
    std::vector<int> degrees;
    int weight;
    QPoly value;
  };
  std::vector<Monomial> kept;
  {
    std::map<Word, std::size_t> index;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
    std::size_t current_rank = 0;
    for (const auto& ms : multisets) {
      QPoly value = QPoly::constant(algebra, 1);
      int weight = 0;
      for (int q : ms) {
        value = multiply(value, casimirs.at(q));
        weight += q;
      }
      rows.push_back(coordinates(value, index));
      RationalMatrix mat(rows.size(), index.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r]) mat(r, c) = v;
      std::size_t rk = rank(mat);
      if (rk > current_rank) {
        current_rank = rk;
        kept.push_back({ms, weight, std::move(value)});
      } else {
        rows.pop_back();
      }
    }
  }

  struct Unknown {
    int p;
    std::size_t monomial;
  };
  std::vector<Unknown> unknowns;
  for (int p = 0; p <= degree; ++p)
    for (std::size_t t = 0; t < kept.size(); ++t)
      if (kept[t].weight <= degree - p) unknowns.push_back({p, t});

  // One equation per (i, j, word).
  std::map<std::tuple<int, int, Word>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(unknowns.size());
  std::vector<Rational> rhs;
  auto row_index = [&](int i, int j, const Word& w) {
    auto [it, inserted] = row_of.try_emplace({i, j, w}, rhs.size());
    if (inserted) rhs.emplace_back(0);
    return it->second;
  };
  for (int i : labels)
    for (int j : labels) {
      for (const auto& [w, c] : P->entry(degree, i, j).terms()) rhs[row_index(i, j, w)] += c;
      const Rational ee = spec.epsilon(i) * spec.epsilon(j);
      for (std::size_t u = 0; u < unknowns.size(); ++u) {
        QPoly basis = multiply(kept[unknowns[u].monomial].value, P->entry(unknowns[u].p, -j, -i));
        for (const auto& [w, c] : basis.terms()) columns[u].emplace_back(row_index(i, j, w), c * ee);
      }
    }
  RationalMatrix system(rhs.size(), unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (const auto& [r, c] : columns[u]) system(r, u) += c;

  CentralExpansion out;
  out.degree = degree;
  for (const auto& k : kept) out.casimir_basis.push_back(casimir_monomial_name(k.degrees));
  out.coefficients.assign(static_cast<std::size_t>(degree) + 1, QPoly(algebra));
  // The leading unknown is C_D times the empty Casimir monomial.
  const std::size_t lead = unknowns.size() - 1;
  out.solution_freedom = unknowns.size() - rank(system);
  auto solution = solve(system, rhs);
  out.solvable = solution.has_value();
  if (solution) {
    out.leading_determined = true;
    for (const auto& v : nullspace(system))
      if (sgn(v[lead]) != 0) out.leading_determined = false;
    RationalMatrix pinned(system.rows() + 1, system.cols());
    for (std::size_t r = 0; r < system.rows(); ++r)
      for (std::size_t c = 0; c < system.cols(); ++c) pinned(r, c) = system(r, c);
    pinned(system.rows(), lead) = 1;
    std::vector<Rational> pinned_rhs = rhs;
    pinned_rhs.emplace_back(degree % 2 == 0 ? 1 : -1);
    if (auto normalized = solve(pinned, pinned_rhs)) {
      out.leading_normalized = true;
      solution = std::move(normalized);
    }
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      if (sgn((*solution)[u]) != 0)
        out.coefficients[static_cast<std::size_t>(unknowns[u].p)] += kept[unknowns[u].monomial].value * (*solution)[u];
  }
  return out;
}

QPoly proposition3_residual(const EnvelopingPtr& algebra, const CentralExpansion& c, int i, int j) {
  const AlgebraSpec& spec = algebra->spec();
  auto P = MatrixPowers::of(algebra);
  QPoly out = P->entry(c.degree, i, j);
  const Rational ee = spec.epsilon(i) * spec.epsilon(j);
  for (int p = 0; p <= c.degree; ++p) {
    const QPoly& cp = c.coefficients[static_cast<std::size_t>(p)];
    if (cp.is_zero()) continue;
    out -= multiply(cp, P->entry(p, -j, -i)) * ee;
  }
  return out;
}

int proposition4_derived_sign(const AlgebraSpec& spec) {
  const int u = spec.index_set().back();
  return spec.epsilon(u) * spec.epsilon(-u);
}

QPoly proposition4_residual(const EnvelopingPtr& algebra, const CentralExpansion& cn, int M, int N, int i, int j,
                            int k, int l, int sign) {
  const AlgebraSpec& spec = algebra->spec();
  require_family(spec, true, "proposition 4");
  if (cn.degree != N) throw std::invalid_argument("proposition 4 needs the central expansion of degree N");
  auto P = MatrixPowers::of(algebra);
  QPoly out = commutator(P->entry(M, i, j), P->entry(N, k, l)) - gl_part(*P, M, N, i, j, k, l);
  const Rational e1 = spec.epsilon(-l) * spec.epsilon(k);
  const Rational e2 = spec.epsilon(-k) * spec.epsilon(l);
  QPoly eps_part(algebra);
  for (int p = 0; p <= N; ++p) {
    const QPoly& cp = cn.coefficients[static_cast<std::size_t>(p)];
    if (cp.is_zero()) continue;
    QPoly inner(algebra);
    for (int S = 1; S <= M; ++S) {
      inner += multiply(P->entry(M + p - S, i, -k), P->entry(S - 1, -l, j)) * e1;
      inner -= multiply(P->entry(S - 1, i, -k), P->entry(p + M - S, -l, j)) * e2;
    }
    eps_part += multiply(cp, inner);
  }
  return out - eps_part * Rational(sign);
}

QPoly contraction_t1(const EnvelopingPtr& algebra, const RationalMatrix& a, int p, int q) {
  if (p == 0 || q == 0) return QPoly(algebra);
  return commutator(shift_generator(algebra, a, p), shift_generator(algebra, a, q));
}

QPoly contraction_t2(const EnvelopingPtr& algebra, const RationalMatrix& a, int p, int q) {
  if (p == 0 || q == 0) return QPoly(algebra);
  const std::size_t m = algebra->spec().index_set().size();
  auto P = MatrixPowers::of(algebra);
  QPoly out(algebra);
  // sum_{ij} [(X^p)_ij, Y_ji] with Y_ji = sum_{kl} A_jk (X^q)_kl A_li
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      QPoly y(algebra);
      for (std::size_t k = 0; k < m; ++k) {
        if (sgn(a(j, k)) == 0) continue;
        for (std::size_t l = 0; l < m; ++l) {
          Rational c = a(j, k) * a(l, i);
          if (sgn(c) != 0) y += P->entry_at(q, k, l) * c;
        }
      }
      if (!y.is_zero()) out += commutator(P->entry_at(p, i, j), y);
    }
  return out;
}

namespace {

class ContractionMemo {
 public:
  ContractionMemo(const EnvelopingPtr& algebra, const RationalMatrix& a) : algebra_(algebra), a_(a) {}
  const QPoly& t1(int p, int q) { return get(t1_, p, q, contraction_t1); }
  const QPoly& t2(int p, int q) { return get(t2_, p, q, contraction_t2); }

 private:
  using Fn = QPoly (*)(const EnvelopingPtr&, const RationalMatrix&, int, int);
  const QPoly& get(std::map<std::pair<int, int>, QPoly>& memo, int p, int q, Fn fn) {
    auto it = memo.find({p, q});
    if (it == memo.end()) it = memo.emplace(std::pair(p, q), fn(algebra_, a_, p, q)).first;
    return it->second;
  }
  const EnvelopingPtr& algebra_;
  const RationalMatrix& a_;
  std::map<std::pair<int, int>, QPoly> t1_, t2_;
};

const CentralExpansion& expansion_of(const std::vector<CentralExpansion>& expansions, int degree) {
  for (const auto& e : expansions)
    if (e.degree == degree) return e;
  throw std::invalid_argument("missing central expansion of degree " + std::to_string(degree));
}

}  // namespace

QPoly proposition5_residual_i(const EnvelopingPtr& algebra, const RationalMatrix& a,
                              const std::vector<CentralExpansion>& expansions, int M, int N) {
  require_family(algebra->spec(), true, "proposition 5");
  ContractionMemo T(algebra, a);
  const CentralExpansion& cn = expansion_of(expansions, N);
  QPoly out = T.t1(M, N);
  for (int S = 1; S <= M; ++S) out -= T.t1(S - 1, N + M - S);
  for (int p = 0; p <= N; ++p) {
    const QPoly& cp = cn.coefficients[static_cast<std::size_t>(p)];
    if (cp.is_zero()) continue;
    QPoly inner(algebra);
    for (int S = 1; S <= M; ++S) inner += T.t2(S - 1, p + M - S);
    if (!inner.is_zero()) out -= multiply(cp, inner);
  }
  return out;
}

QPoly proposition5_residual_ii(const EnvelopingPtr& algebra, const RationalMatrix& a,
                               const std::vector<CentralExpansion>& expansions, int M, int N, int sign) {
  require_family(algebra->spec(), true, "proposition 5");
  ContractionMemo T(algebra, a);
  const CentralExpansion& cn = expansion_of(expansions, N);
  const CentralExpansion& cm = expansion_of(expansions, M);
  QPoly out = T.t2(M, N);
  for (int S = 1; S <= M; ++S) out -= T.t1(S - 1, N + M - S);
  for (int p = 0; p <= N; ++p) {
    const QPoly& cp = cn.coefficients[static_cast<std::size_t>(p)];
    if (cp.is_zero()) continue;
    QPoly inner(algebra);
    for (int S = 1; S <= M; ++S)
      for (int Q = 1; Q <= S; ++Q) {
        const QPoly& cq = cm.coefficients[static_cast<std::size_t>(Q)];
        if (cq.is_zero()) continue;
        const QPoly& t = T.t2(Q - 1, p + M - S);
        if (!t.is_zero()) inner += multiply(cq, t);
      }
    if (!inner.is_zero()) out -= multiply(cp, inner) * Rational(sign);
  }
  return out;
}

}  // namespace envalg
