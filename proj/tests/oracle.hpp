#pragma once

// Reference implementations that share no code with the library: dense
// integer defining matrices, a brute-force structure-constant table read off
// matrix commutators, and a rewriter that swaps the rightmost out-of-order
// pair. Tests compare the library against these.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

enum class Kind { GL, SO, SP };

using IntMatrix = std::vector<std::vector<long>>;
using Word = std::vector<int>;
using Poly = std::map<Word, mpq_class>;

struct Algebra {
  Kind kind;
  std::vector<int> labels;                   // ordered index set
  std::vector<std::pair<int, int>> gens;     // canonical pairs in PBW order
  std::vector<IntMatrix> mats;               // defining matrices of gens
  // bracket[a][b]: (generator, coefficient) terms of [X_a, X_b]
  std::vector<std::vector<std::vector<std::pair<int, mpq_class>>>> bracket;

  int eps(int j) const { return kind == Kind::SP ? (j > 0 ? 1 : -1) : 1; }
  std::size_t pos(int label) const {
    return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), label) - labels.begin());
  }
  std::size_t size() const { return labels.size(); }
};

// mpq_class(num, den) does not reduce; every fraction goes through here.
inline mpq_class fraction(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline IntMatrix zero_matrix(std::size_t m) { return IntMatrix(m, std::vector<long>(m, 0)); }

inline IntMatrix raw_matrix(const Algebra& g, int i, int j) {
  auto out = zero_matrix(g.size());
  out[g.pos(i)][g.pos(j)] += 1;
  if (g.kind != Kind::GL) out[g.pos(-j)][g.pos(-i)] -= g.eps(i) * g.eps(j);
  return out;
}

inline bool is_zero(const IntMatrix& m) {
  for (const auto& r : m)
    for (long v : r)
      if (v != 0) return false;
  return true;
}

inline IntMatrix matrix_commutator(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t m = a.size();
  auto out = zero_matrix(m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t k = 0; k < m; ++k) out[r][c] += a[r][k] * b[k][c] - b[r][k] * a[k][c];
  return out;
}

/// gl: labels 1..n. so(m): -floor(m/2)..floor(m/2), skipping 0 for even m.
/// sp(n): -n..-1,1..n. A pair (i,j) is canonical when it is not after its
/// partner (-j,-i) in lexicographic label-position order.
inline Algebra make(Kind kind, int n) {
  Algebra g{kind, {}, {}, {}, {}};
  if (kind == Kind::GL) {
    for (int i = 1; i <= n; ++i) g.labels.push_back(i);
  } else {
    const int half = kind == Kind::SO ? n / 2 : n;
    for (int i = -half; i <= half; ++i)
      if (i != 0 || (kind == Kind::SO && n % 2 == 1)) g.labels.push_back(i);
  }
  for (int i : g.labels)
    for (int j : g.labels) {
      if (kind != Kind::GL) {
        const auto self = std::make_pair(g.pos(i), g.pos(j));
        const auto partner = std::make_pair(g.pos(-j), g.pos(-i));
        if (partner < self) continue;
      }
      auto m = raw_matrix(g, i, j);
      if (is_zero(m)) continue;
      g.gens.emplace_back(i, j);
      g.mats.push_back(std::move(m));
    }
  const std::size_t d = g.gens.size();
  g.bracket.assign(d, std::vector<std::vector<std::pair<int, mpq_class>>>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const auto c = matrix_commutator(g.mats[a], g.mats[b]);
      auto rebuilt = zero_matrix(g.size());
      for (std::size_t e = 0; e < d; ++e) {
        const auto [i, j] = g.gens[e];
        const long at = c[g.pos(i)][g.pos(j)];
        if (at == 0) continue;
        const mpq_class coeff = fraction(at, g.mats[e][g.pos(i)][g.pos(j)]);
        g.bracket[a][b].emplace_back(static_cast<int>(e), coeff);
        for (std::size_t r = 0; r < g.size(); ++r)
          for (std::size_t s = 0; s < g.size(); ++s) {
            const mpq_class v = coeff * g.mats[e][r][s];
            rebuilt[r][s] += v.get_num().get_si();
          }
      }
      if (rebuilt != c) throw std::logic_error("oracle: commutator outside the generator span");
    }
  return g;
}

inline void add(Poly& p, const Word& w, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = p.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

/// Normal form by repeatedly rewriting the rightmost out-of-order adjacent
/// pair of some unsorted word: ...YX... -> ...XY... + ...[Y,X]...
inline Poly normal_form_rightmost(const Algebra& g, Poly p) {
  for (;;) {
    auto it = std::find_if(p.begin(), p.end(), [](const auto& t) { return !std::is_sorted(t.first.begin(), t.first.end()); });
    if (it == p.end()) return p;
    const Word w = it->first;
    const mpq_class c = it->second;
    p.erase(it);
    std::size_t k = w.size() - 1;
    while (w[k - 1] <= w[k]) --k;
    Word swapped = w;
    std::swap(swapped[k - 1], swapped[k]);
    add(p, swapped, c);
    for (const auto& [e, v] : g.bracket[static_cast<std::size_t>(w[k - 1])][static_cast<std::size_t>(w[k])]) {
      Word shorter(w.begin(), w.begin() + static_cast<long>(k) - 1);
      shorter.push_back(e);
      shorter.insert(shorter.end(), w.begin() + static_cast<long>(k) + 1, w.end());
      add(p, shorter, c * v);
    }
  }
}

inline Poly concat_product(const Poly& p, const Poly& q) {
  Poly out;
  for (const auto& [u, a] : p)
    for (const auto& [v, b] : q) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      add(out, w, a * b);
    }
  return out;
}

/// Random polynomial with up to `terms` words of length <= `degree` and
/// small nonzero integer coefficients; words are not sorted.
inline Poly random_poly(const Algebra& g, std::mt19937_64& rng, int degree, int terms) {
  std::uniform_int_distribution<int> len(0, degree), gen(0, static_cast<int>(g.gens.size()) - 1), coef(-3, 3);
  Poly p;
  for (int t = 0; t < terms; ++t) {
    Word w(static_cast<std::size_t>(len(rng)));
    for (auto& x : w) x = gen(rng);
    int c = 0;
    while (c == 0) c = coef(rng);
    add(p, w, c);
  }
  return p;
}

}  // namespace oracle
