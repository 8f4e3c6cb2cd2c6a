#include "envalg/shift_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace envalg {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// entry := [sign] rational | [sign] "a" k
CommPoly parse_entry(const std::string& token) {
  if (token.empty()) throw std::invalid_argument("empty shift matrix entry");
  std::string_view body = token;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!body.empty() && body.front() == 'a') {
    body.remove_prefix(1);
    unsigned k = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
    if (ec != std::errc() || ptr != body.data() + body.size() || k == 0)
      throw std::invalid_argument("malformed shift parameter '" + token + "' (expected a1, a2, ...)");
    CommPoly v = CommPoly::variable(k - 1);
    return negative ? -v : v;
  }
  return CommPoly(parse_rational(token));
}

std::vector<std::vector<std::string>> read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("shift designator '" + path + "' is neither diag:, sym-diag:, rows: nor a readable file");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    std::vector<std::string> row;
    std::string tok;
    while (ss >> tok) row.push_back(tok);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ShiftMatrix::ShiftMatrix(AlgebraSpec spec, std::vector<int> labels, std::vector<CommPoly> entries)
    : spec_(std::move(spec)), labels_(std::move(labels)), entries_(std::move(entries)) {
  if (entries_.size() != labels_.size() * labels_.size())
    throw std::invalid_argument("shift matrix entry count does not match the label block");
  for (int l : labels_)
    if (!spec_.contains(l)) throw std::invalid_argument("shift label " + std::to_string(l) + " not in " + spec_.name());
}

ShiftMatrix ShiftMatrix::from_numeric(AlgebraSpec spec, std::vector<int> labels, const RationalMatrix& m) {
  if (m.rows() != labels.size() || m.cols() != labels.size())
    throw std::invalid_argument("shift matrix size does not match the label block");
  std::vector<CommPoly> entries(m.data().begin(), m.data().end());
  return ShiftMatrix(std::move(spec), std::move(labels), std::move(entries));
}

const CommPoly& ShiftMatrix::at(int i, int j) const {
  auto pos = [&](int l) {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) throw std::out_of_range("label " + std::to_string(l) + " outside the shift block");
    return static_cast<std::size_t>(it - labels_.begin());
  };
  return entry(pos(i), pos(j));
}

bool ShiftMatrix::is_numeric() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CommPoly& c) { return c.is_constant(); });
}

RationalMatrix ShiftMatrix::numeric() const {
  if (!is_numeric()) throw std::logic_error("shift matrix has symbolic entries");
  RationalMatrix m(size(), size());
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b) m(a, b) = entry(a, b).constant_term();
  return m;
}

std::size_t ShiftMatrix::parameter_count() const {
  std::size_t n = 0;
  for (const auto& c : entries_) n = std::max(n, c.variable_span());
  return n;
}

std::vector<int> ShiftMatrix::symmetry_signs() const {
  if (!spec_.is_symmetric_family()) return {};
  std::vector<int> out;
  for (int s : {-1, 1}) {
    bool ok = true;
    for (std::size_t a = 0; a < size() && ok; ++a)
      for (std::size_t b = 0; b < size() && ok; ++b) {
        int i = labels_[a], j = labels_[b];
        CommPoly rhs = at(-j, -i) * Rational(s * spec_.epsilon(i) * spec_.epsilon(j));
        ok = entry(a, b) == rhs;
      }
    if (ok) out.push_back(s);
  }
  return out;
}

void ShiftMatrix::require_declared_sign() const {
  if (!declared_sign) return;
  auto signs = symmetry_signs();
  if (std::find(signs.begin(), signs.end(), *declared_sign) == signs.end())
    throw std::invalid_argument("shift matrix " + description + " violates the declared symmetry sign " +
                                std::to_string(*declared_sign));
}

ShiftMatrix parse_shift(const AlgebraSpec& spec, const std::vector<int>& labels, std::string_view designator) {
  const std::size_t m = labels.size();
  std::vector<CommPoly> entries(m * m);
  auto fill_diagonal = [&](std::string_view body) {
    auto tokens = split(body, ',');
    if (tokens.size() != m)
      throw std::invalid_argument("diagonal shift needs " + std::to_string(m) + " entries, got " +
                                  std::to_string(tokens.size()));
    for (std::size_t a = 0; a < m; ++a) entries[a * m + a] = parse_entry(tokens[a]);
  };
  auto fill_rows = [&](const std::vector<std::vector<std::string>>& rows) {
    if (rows.size() != m) throw std::invalid_argument("shift matrix needs " + std::to_string(m) + " rows");
    for (std::size_t a = 0; a < m; ++a) {
      if (rows[a].size() != m) throw std::invalid_argument("shift matrix needs " + std::to_string(m) + " columns");
      for (std::size_t b = 0; b < m; ++b) entries[a * m + b] = parse_entry(rows[a][b]);
    }
  };
  if (designator.starts_with("diag:")) {
    fill_diagonal(designator.substr(5));
    for (const auto& e : entries)
      if (!e.is_constant()) throw std::invalid_argument("diag: takes numbers; use sym-diag: for parameters");
  } else if (designator.starts_with("sym-diag:")) {
    fill_diagonal(designator.substr(9));
  } else if (designator.starts_with("rows:")) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : split(designator.substr(5), ';')) rows.push_back(split(r, ','));
    fill_rows(rows);
  } else {
    fill_rows(read_matrix_file(std::string(designator)));
  }
  ShiftMatrix out(spec, labels, std::move(entries));
  out.description = std::string(designator);
  return out;
}

std::size_t matrix_rank(const ShiftMatrix& a) { return rank(a.numeric()); }

bool is_semisimple(const ShiftMatrix& a) { return is_semisimple(a.numeric()); }

RationalMatrix sigma_transpose(const AlgebraSpec& spec, const std::vector<int>& labels, const RationalMatrix& m) {
  if (!spec.is_symmetric_family()) return m.transpose();
  const std::size_t size = labels.size();
  auto pos = [&](int l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw std::invalid_argument("label block is not closed under negation");
    return static_cast<std::size_t>(it - labels.begin());
  };
  RationalMatrix out(size, size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      int i = labels[a], j = labels[b];
      out(a, b) = spec.epsilon(i) * spec.epsilon(j) * m(pos(-j), pos(-i));
    }
  return out;
}

bool in_matrix_algebra(const ShiftMatrix& a) {
  if (!a.spec().is_symmetric_family()) return true;
  auto signs = a.symmetry_signs();
  return std::find(signs.begin(), signs.end(), -1) != signs.end();
}

RationalMatrix random_shift_matrix(const AlgebraSpec& spec, const std::vector<int>& labels, int sign,
                                   std::uint64_t seed, int bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-bound, bound);
  const std::size_t m = labels.size();
  RationalMatrix r(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) r(a, b) = dist(rng);
  if (sign == 0 || !spec.is_symmetric_family()) return r;
  // sigma is an involution, so R + s sigma(R) satisfies A = s sigma(A).
  return r + Rational(sign) * sigma_transpose(spec, labels, r);
}

}  // namespace envalg
