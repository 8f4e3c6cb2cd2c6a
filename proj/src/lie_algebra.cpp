#include "envalg/lie_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace envalg {

namespace {

std::vector<int> make_index_set(Family family, int n) {
  std::vector<int> labels;
  switch (family) {
    case Family::GL:
      for (int i = 1; i <= n; ++i) labels.push_back(i);
      break;
    case Family::SO_odd:
      for (int i = -n; i <= n; ++i) labels.push_back(i);
      break;
    case Family::SO_even:
    case Family::SP:
      for (int i = -n; i <= n; ++i)
        if (i != 0) labels.push_back(i);
      break;
  }
  return labels;
}

int kronecker(int a, int b) { return a == b ? 1 : 0; }

}  // namespace

int AlgebraSpec::epsilon(int j) const {
  if (data_->family == Family::SP) return j > 0 ? 1 : -1;
  return 1;
}

bool AlgebraSpec::contains(int label) const {
  const auto& s = data_->index_set;
  return std::binary_search(s.begin(), s.end(), label);
}

std::size_t AlgebraSpec::position(int label) const {
  const auto& s = data_->index_set;
  auto it = std::lower_bound(s.begin(), s.end(), label);
  if (it == s.end() || *it != label)
    throw std::out_of_range("index " + std::to_string(label) + " is not in the index set of " + name());
  return static_cast<std::size_t>(it - s.begin());
}

std::string AlgebraSpec::designator() const {
  switch (family()) {
    case Family::GL: return "gl:" + std::to_string(n());
    case Family::SO_even: return "so:" + std::to_string(2 * n());
    case Family::SO_odd: return "so:" + std::to_string(2 * n() + 1);
    case Family::SP: return "sp:" + std::to_string(n());
  }
  return {};
}

std::string AlgebraSpec::name() const {
  switch (family()) {
    case Family::GL: return "gl(" + std::to_string(n()) + ")";
    case Family::SO_even: return "so(" + std::to_string(2 * n()) + ")";
    case Family::SO_odd: return "so(" + std::to_string(2 * n() + 1) + ")";
    case Family::SP: return "sp(" + std::to_string(n()) + ")";
  }
  return {};
}

std::string AlgebraSpec::generator_name(int id) const {
  const auto& [i, j] = data_->generators.at(static_cast<std::size_t>(id));
  return "X[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

AlgebraSpec::Slot AlgebraSpec::slot(int i, int j) const { return slot_at(position(i), position(j)); }

GeneratorRef canonicalize(const AlgebraSpec& spec, int i, int j) {
  spec.position(i);
  spec.position(j);
  if (!spec.is_symmetric_family()) return {i, j, true, 1};
  // Partner (-j,-i) with X[i,j] = -eps_i eps_j X[-j,-i].
  const int partner_sign = -spec.epsilon(i) * spec.epsilon(j);
  const int pi = i, pj = j, qi = -j, qj = -i;
  if (pi == qi && pj == qj) {
    // Self-paired: X = partner_sign * X, so zero exactly when partner_sign = -1.
    if (partner_sign == -1) return {i, j, true, 0};
    return {i, j, true, 1};
  }
  if (std::pair(pi, pj) < std::pair(qi, qj)) return {i, j, true, 1};
  return {qi, qj, false, partner_sign};
}

AlgebraSpec make_algebra(Family family, int n) {
  if (n < 1) throw std::invalid_argument("algebra rank parameter must be >= 1, got " + std::to_string(n));
  switch (family) {
    case Family::GL:
    case Family::SO_even:
    case Family::SO_odd:
    case Family::SP:
      break;
    default:
      throw std::invalid_argument("unknown algebra family");
  }
  auto data = std::make_shared<AlgebraSpec::Data>();
  data->family = family;
  data->n = n;
  data->index_set = make_index_set(family, n);
  const std::size_t m = data->index_set.size();

  // Bootstrap a spec over partially filled data so canonicalize can run.
  AlgebraSpec bootstrap(data);
  std::map<std::pair<int, int>, int> ids;
  for (int i : data->index_set)
    for (int j : data->index_set) {
      auto ref = canonicalize(bootstrap, i, j);
      if (!ref.is_zero() && ref.canonical) ids.emplace(std::pair(i, j), 0);
    }
  int next = 0;
  for (auto& [pair, id] : ids) {
    id = next++;
    data->generators.push_back(pair);
  }
  data->slots.resize(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      auto ref = canonicalize(bootstrap, data->index_set[a], data->index_set[b]);
      AlgebraSpec::Slot s;
      if (!ref.is_zero()) {
        s.id = ids.at({ref.i, ref.j});
        s.sign = ref.sign;
      }
      data->slots[a * m + b] = s;
    }
  const std::size_t dim = data->generators.size();
  data->structure.resize(dim * dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      auto terms = bracket_structure(bootstrap, data->generators[a], data->generators[b]);
      auto& out = data->structure[a * dim + b];
      for (const auto& t : terms) out.emplace_back(ids.at({t.generator.i, t.generator.j}), t.coefficient);
    }
  return AlgebraSpec(std::move(data));
}

AlgebraSpec parse_algebra(std::string_view designator) {
  auto colon = designator.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("algebra designator must look like gl:3, so:5 or sp:2, got '" +
                                std::string(designator) + "'");
  std::string_view fam = designator.substr(0, colon);
  std::string_view num = designator.substr(colon + 1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
  if (ec != std::errc() || ptr != num.data() + num.size())
    throw std::invalid_argument("malformed size in algebra designator '" + std::string(designator) + "'");
  if (fam == "gl") return make_algebra(Family::GL, value);
  if (fam == "sp") return make_algebra(Family::SP, value);
  if (fam == "so") {
    if (value < 2) throw std::invalid_argument("so:m needs m >= 2, got '" + std::string(designator) + "'");
    return value % 2 == 0 ? make_algebra(Family::SO_even, value / 2) : make_algebra(Family::SO_odd, value / 2);
  }
  throw std::invalid_argument("unknown algebra family '" + std::string(fam) + "'");
}

std::vector<GeneratorTerm> bracket_structure(const AlgebraSpec& spec, std::pair<int, int> x,
                                             std::pair<int, int> y) {
  const auto [i, j] = x;
  const auto [k, l] = y;
  for (int label : {i, j, k, l}) spec.position(label);

  std::map<std::pair<int, int>, int> acc;
  auto add = [&](int coeff, int a, int b) {
    if (coeff == 0 || !spec.contains(a) || !spec.contains(b)) return;
    auto ref = canonicalize(spec, a, b);
    if (ref.is_zero()) return;
    acc[{ref.i, ref.j}] += coeff * ref.sign;
  };
  add(kronecker(k, j), i, l);
  add(-kronecker(i, l), k, j);
  if (spec.is_symmetric_family()) {
    const int ee = spec.epsilon(i) * spec.epsilon(j);
    add(ee * kronecker(j, -l), k, -i);
    add(-ee * kronecker(k, -i), -j, l);
  }
  std::vector<GeneratorTerm> out;
  for (const auto& [pair, coeff] : acc)
    if (coeff != 0) out.push_back({{pair.first, pair.second, true, 1}, coeff});
  return out;
}

std::pair<int, int> dimension_and_index(const AlgebraSpec& spec) {
  return {static_cast<int>(spec.dimension()), spec.n()};
}

RationalMatrix defining_matrix(const AlgebraSpec& spec, int i, int j) {
  const std::size_t m = spec.index_set().size();
  RationalMatrix out(m, m);
  out(spec.position(i), spec.position(j)) += 1;
  if (spec.is_symmetric_family())
    out(spec.position(-j), spec.position(-i)) -= spec.epsilon(i) * spec.epsilon(j);
  return out;
}

RationalMatrix sigma_transpose(const AlgebraSpec& spec, const RationalMatrix& m) {
  const auto& labels = spec.index_set();
  const std::size_t size = labels.size();
  if (m.rows() != size || m.cols() != size) throw std::invalid_argument("matrix does not conform to index set");
  RationalMatrix out(size, size);
  if (!spec.is_symmetric_family()) return m.transpose();
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      int i = labels[a], j = labels[b];
      out(a, b) = spec.epsilon(i) * spec.epsilon(j) * m(spec.position(-j), spec.position(-i));
    }
  return out;
}

bool in_matrix_algebra(const AlgebraSpec& spec, const RationalMatrix& m) {
  const std::size_t size = spec.index_set().size();
  if (m.rows() != size || m.cols() != size) return false;
  if (!spec.is_symmetric_family()) return true;
  return (m + sigma_transpose(spec, m)).is_zero();
}

RationalMatrix coordinates_to_matrix(const AlgebraSpec& spec, std::span<const Rational> coordinates) {
  if (coordinates.size() != spec.dimension()) throw std::invalid_argument("coordinate vector size mismatch");
  const std::size_t size = spec.index_set().size();
  RationalMatrix out(size, size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      auto s = spec.slot_at(a, b);
      if (s.id >= 0) out(a, b) = s.sign * coordinates[static_cast<std::size_t>(s.id)];
    }
  return out;
}

std::vector<Rational> matrix_to_coordinates(const AlgebraSpec& spec, const RationalMatrix& m) {
  if (!in_matrix_algebra(spec, m)) throw std::invalid_argument("matrix is not in " + spec.name());
  std::vector<Rational> out(spec.dimension());
  for (std::size_t id = 0; id < spec.dimension(); ++id) {
    const auto& [i, j] = spec.generators()[id];
    out[id] = m(spec.position(i), spec.position(j));
  }
  return out;
}

}  // namespace envalg
