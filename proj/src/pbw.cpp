#include "envalg/pbw.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace envalg {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("PBW kernel coefficient overflow");
  return out;
}

void checked_add(std::int64_t& target, std::int64_t value) {
  if (__builtin_add_overflow(target, value, &target)) throw std::overflow_error("PBW kernel coefficient overflow");
}

Rational scaled(const Rational& c, std::int64_t k) {
  Rational out = c;
  out *= static_cast<long>(k);
  return out;
}

CommPoly scaled(const CommPoly& c, std::int64_t k) { return c * Rational(static_cast<long>(k)); }

template <class Table>
void prune(Table& table) {
  absl::erase_if(table, [](const auto& kv) { return is_zero(kv.second); });
}

template <class C>
void accumulate(absl::flat_hash_map<Word, C>& table, const Word& w, const C& c) {
  auto [it, inserted] = table.try_emplace(w, c);
  if (!inserted) it->second += c;
}

void require_same(const EnvelopingPtr& a, const EnvelopingPtr& b) {
  if (a != b)
    throw MixedAlgebraError("operands belong to different algebras: " + a->spec().name() + " and " +
                            b->spec().name());
}

template <class C>
absl::flat_hash_map<Word, C> multiply_letter(const UniversalEnveloping& u, const absl::flat_hash_map<Word, C>& p,
                                             Letter g) {
  absl::flat_hash_map<Word, C> out;
  out.reserve(p.size() * 2);
  for (const auto& [w, c] : p) {
    u.right_multiply(w, g, [&](const Word& v, std::int64_t k) {
      if (k == 1)
        accumulate(out, v, c);
      else
        accumulate(out, v, scaled(c, k));
    });
  }
  prune(out);
  return out;
}

template <class C>
NCPoly<C> ensure_normal(const NCPoly<C>& p) {
  return p.is_normal() ? p : normal_form(p);
}

}  // namespace

// ---------------------------------------------------------------- kernel

std::shared_ptr<const UniversalEnveloping> UniversalEnveloping::of(const AlgebraSpec& spec) {
  static std::mutex registry_mutex;
  static std::map<std::string, std::shared_ptr<const UniversalEnveloping>> registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[spec.designator()];
  if (!slot) slot = std::make_shared<const UniversalEnveloping>(spec);
  return slot;
}

std::size_t UniversalEnveloping::cached_reductions() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

std::shared_ptr<const KernelTerms> UniversalEnveloping::reduction(const Word& w, Letter g) const {
  Word key = w;
  key.push_back(g);
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  auto computed = std::make_shared<const KernelTerms>(compute_reduction(w, g));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = memo_.try_emplace(std::move(key), std::move(computed));
  return it->second;
}

KernelTerms UniversalEnveloping::compute_reduction(const Word& w, Letter g) const {
  // w = prefix . y with y > g:  w g = (prefix g) y + prefix [y, g].
  const Letter y = w.back();
  const Word prefix = w.substr(0, w.size() - 1);
  absl::flat_hash_map<Word, std::int64_t> acc;
  right_multiply(prefix, g, [&](const Word& u, std::int64_t r) {
    right_multiply(u, y, [&](const Word& v, std::int64_t s) { checked_add(acc[v], checked_mul(r, s)); });
  });
  for (const auto& [z, k] : spec_.structure(y, g)) {
    right_multiply(prefix, static_cast<Letter>(z),
                   [&](const Word& v, std::int64_t s) { checked_add(acc[v], checked_mul(k, s)); });
  }
  KernelTerms out;
  out.reserve(acc.size());
  for (auto& [v, c] : acc)
    if (c != 0) out.emplace_back(v, c);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- NCPoly

template <class C>
NCPoly<C> NCPoly<C>::constant(EnvelopingPtr algebra, const C& value) {
  NCPoly p(std::move(algebra));
  p.add_term(Word{}, value);
  return p;
}

template <class C>
NCPoly<C> NCPoly<C>::generator(EnvelopingPtr algebra, int i, int j) {
  NCPoly p(std::move(algebra));
  auto slot = p.spec().slot(i, j);
  if (slot.id >= 0) p.add_term(Word(1, static_cast<Letter>(slot.id)), C(slot.sign));
  return p;
}

template <class C>
NCPoly<C> NCPoly<C>::from_raw_terms(EnvelopingPtr algebra, TermTable terms) {
  NCPoly p(std::move(algebra));
  p.terms_ = std::move(terms);
  prune(p.terms_);
  return p;
}

template <class C>
bool NCPoly<C>::is_normal() const {
  for (const auto& [w, c] : terms_)
    if (!is_sorted_word(w)) return false;
  return true;
}

template <class C>
int NCPoly<C>::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

template <class C>
NCPoly<C> NCPoly<C>::homogeneous_part(int degree) const {
  NCPoly out(algebra_);
  for (const auto& [w, c] : terms_)
    if (static_cast<int>(w.size()) == degree) out.terms_.emplace(w, c);
  return out;
}

template <class C>
C NCPoly<C>::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? C(0) : it->second;
}

template <class C>
void NCPoly<C>::add_term(const Word& w, const C& c) {
  if (envalg::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (envalg::is_zero(it->second)) terms_.erase(it);
}

template <class C>
NCPoly<C>& NCPoly<C>::operator+=(const NCPoly& other) {
  require_same(algebra_, other.algebra_);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

template <class C>
NCPoly<C>& NCPoly<C>::operator-=(const NCPoly& other) {
  require_same(algebra_, other.algebra_);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

template <class C>
NCPoly<C>& NCPoly<C>::operator*=(const C& scalar) {
  if (envalg::is_zero(scalar)) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c = c * scalar;
  prune(terms_);
  return *this;
}

// ---------------------------------------------------------------- algorithms

template <class C>
NCPoly<C> normal_form(const NCPoly<C>& p) {
  const AlgebraSpec& spec = p.spec();
  typename NCPoly<C>::TermTable result;
  typename NCPoly<C>::TermTable pending = p.terms();
  while (!pending.empty()) {
    auto it = pending.begin();
    Word w = it->first;
    C c = it->second;
    pending.erase(it);
    if (is_zero(c)) continue;
    std::size_t k = 0;
    while (k + 1 < w.size() && w[k] <= w[k + 1]) ++k;
    if (k + 1 >= w.size()) {
      accumulate(result, w, c);
      continue;
    }
    const Letter x = w[k], y = w[k + 1];
    Word swapped = w;
    std::swap(swapped[k], swapped[k + 1]);
    accumulate(pending, swapped, c);
    for (const auto& [z, coeff] : spec.structure(x, y)) {
      Word reduced = w.substr(0, k);
      reduced.push_back(static_cast<Letter>(z));
      reduced.append(w, k + 2);
      accumulate(pending, reduced, scaled(c, coeff));
    }
  }
  return NCPoly<C>::from_raw_terms(p.algebra(), std::move(result));
}

template <class C>
NCPoly<C> multiply_generator(const NCPoly<C>& p, int generator_id) {
  const NCPoly<C> lhs = ensure_normal(p);
  return NCPoly<C>::from_raw_terms(
      lhs.algebra(), multiply_letter(*lhs.algebra(), lhs.terms(), static_cast<Letter>(generator_id)));
}

namespace {

QPoly multiply_rational(const QPoly& p, const QPoly& q) {
  const UniversalEnveloping& u = *p.algebra();
  using Table = QPoly::TermTable;
  std::vector<const std::pair<const Word, Rational>*> right;
  right.reserve(q.size());
  for (const auto& t : q.terms()) right.push_back(&t);
  std::sort(right.begin(), right.end(), [](auto* a, auto* b) { return a->first < b->first; });

  // stack[L] holds p * (first L letters of the current right-hand word);
  // consecutive sorted words share prefixes, so partial products are reused.
  std::vector<Table> stack;
  stack.push_back(p.terms());
  Word previous;
  Table out;
  for (const auto* term : right) {
    const Word& v = term->first;
    std::size_t common = 0;
    while (common < previous.size() && common < v.size() && previous[common] == v[common]) ++common;
    stack.resize(common + 1);
    for (std::size_t t = common; t < v.size(); ++t) stack.push_back(multiply_letter(u, stack[t], v[t]));
    for (const auto& [w, c] : stack[v.size()]) accumulate(out, w, Rational(c * term->second));
    previous = v;
  }
  prune(out);
  return QPoly::from_raw_terms(p.algebra(), std::move(out));
}

}  // namespace

std::map<CommPoly::Exponents, QPoly> split_parameters(const ParamNCPoly& p) {
  std::map<CommPoly::Exponents, QPoly> parts;
  for (const auto& [w, c] : p.terms())
    for (const auto& [e, r] : c.terms()) parts.try_emplace(e, p.algebra()).first->second.add_term(w, r);
  return parts;
}

ParamNCPoly join_parameters(const EnvelopingPtr& algebra, const std::map<CommPoly::Exponents, QPoly>& parts) {
  ParamNCPoly::TermTable table;
  for (const auto& [e, part] : parts)
    for (const auto& [w, r] : part.terms()) {
      auto [it, inserted] = table.try_emplace(w);
      it->second.add_term(e, r);
    }
  return ParamNCPoly::from_raw_terms(algebra, std::move(table));
}

template <>
QPoly multiply(const QPoly& p, const QPoly& q) {
  require_same(p.algebra(), q.algebra());
  if (p.is_zero() || q.is_zero()) return QPoly(p.algebra());
  return multiply_rational(ensure_normal(p), ensure_normal(q));
}

template <>
ParamNCPoly multiply(const ParamNCPoly& p, const ParamNCPoly& q) {
  require_same(p.algebra(), q.algebra());
  auto left = split_parameters(ensure_normal(p));
  auto right = split_parameters(ensure_normal(q));
  std::map<CommPoly::Exponents, QPoly> product;
  for (const auto& [ea, pa] : left)
    for (const auto& [eb, qb] : right) {
      CommPoly::Exponents e(std::max(ea.size(), eb.size()), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] = ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] = static_cast<std::uint16_t>(e[i] + eb[i]);
      auto [it, inserted] = product.try_emplace(e, p.algebra());
      it->second += multiply(pa, qb);
    }
  return join_parameters(p.algebra(), product);
}

template <class C>
NCPoly<C> commutator(const NCPoly<C>& p, const NCPoly<C>& q) {
  return multiply(p, q) - multiply(q, p);
}

template <class From, class To>
NCPoly<To> map_coefficients(const NCPoly<From>& p, const std::function<To(const From&)>& f) {
  typename NCPoly<To>::TermTable table;
  for (const auto& [w, c] : p.terms()) table.emplace(w, f(c));
  return NCPoly<To>::from_raw_terms(p.algebra(), std::move(table));
}

template class NCPoly<Rational>;
template class NCPoly<CommPoly>;
template QPoly normal_form(const QPoly&);
template ParamNCPoly normal_form(const ParamNCPoly&);
template QPoly commutator(const QPoly&, const QPoly&);
template ParamNCPoly commutator(const ParamNCPoly&, const ParamNCPoly&);
template QPoly multiply_generator(const QPoly&, int);
template ParamNCPoly multiply_generator(const ParamNCPoly&, int);
template ParamNCPoly map_coefficients(const QPoly&, const std::function<CommPoly(const Rational&)>&);
template QPoly map_coefficients(const ParamNCPoly&, const std::function<Rational(const CommPoly&)>&);

// ---------------------------------------------------------------- text

std::string format_word(const AlgebraSpec& spec, const Word& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += '.';
    out += spec.generator_name(static_cast<int>(w[k]));
  }
  return out;
}

namespace {

template <class C>
std::vector<const std::pair<const Word, C>*> display_order(const NCPoly<C>& p) {
  std::vector<const std::pair<const Word, C>*> order;
  for (const auto& t : p.terms()) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
    if (a->first.size() != b->first.size()) return a->first.size() > b->first.size();
    return a->first < b->first;
  });
  return order;
}

void append_term(std::string& out, const std::string& coeff, bool unit, const std::string& word) {
  if (!out.empty()) out += " + ";
  if (word.empty()) {
    out += coeff;
  } else if (unit) {
    out += word;
  } else {
    out += coeff + "*" + word;
  }
}

}  // namespace

std::string format(const QPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto* t : display_order(p))
    append_term(out, t->second.get_str(), t->second == 1, format_word(p.spec(), t->first));
  return out;
}

std::string format(const ParamNCPoly& p, const std::vector<std::string>& parameter_names) {
  if (p.is_zero()) return "0";
  auto name = [&](std::size_t v) {
    return v < parameter_names.size() ? parameter_names[v] : "a" + std::to_string(v + 1);
  };
  std::string out;
  for (const auto* t : display_order(p)) {
    const CommPoly& c = t->second;
    std::string coeff = c.is_constant() ? c.constant_term().get_str() : "(" + c.format(name) + ")";
    bool unit = c.is_constant() && c.constant_term() == 1;
    append_term(out, coeff, unit, format_word(p.spec(), t->first));
  }
  return out;
}

namespace {

class PolynomialParser {
 public:
  PolynomialParser(const EnvelopingPtr& algebra, std::string_view text) : algebra_(algebra), text_(text) {}

  QPoly run() {
    QPoly::TermTable terms;
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    while (true) {
      parse_term(terms);
      skip_ws();
      if (at_end()) break;
      expect('+');
    }
    return normal_form(QPoly::from_raw_terms(algebra_, std::move(terms)));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational coefficient() {
    std::size_t start = pos_;
    std::string token;
    if (peek() == '+' || peek() == '-') {
      token += peek();
      ++pos_;
      skip_ws();
    }
    token += digits();
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      token += "/" + digits();
    }
    try {
      return parse_rational(token);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), start);
    }
  }

  int label() {
    skip_ws();
    std::size_t start = pos_;
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    std::string d = digits();
    int value = std::stoi(d);
    value = negative ? -value : value;
    if (!algebra_->spec().contains(value))
      throw ParseError("index " + std::to_string(value) + " not in the index set of " + algebra_->spec().name(),
                       start);
    return value;
  }

  // Returns false when the generator is identically zero.
  bool generator(Word& word, Rational& coeff) {
    skip_ws();
    if (peek() != 'X') throw ParseError("expected generator 'X['", pos_);
    ++pos_;
    expect('[');
    int i = label();
    expect(',');
    int j = label();
    expect(']');
    auto slot = algebra_->spec().slot(i, j);
    if (slot.id < 0) return false;
    word.push_back(static_cast<Letter>(slot.id));
    coeff *= slot.sign;
    return true;
  }

  void parse_term(QPoly::TermTable& terms) {
    skip_ws();
    Rational coeff = 1;
    bool need_word = true;
    char c = peek();
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      coeff = coefficient();
      skip_ws();
      if (peek() == '*') {
        ++pos_;
      } else {
        need_word = false;
      }
    } else if (c != 'X') {
      throw ParseError("expected a coefficient or generator", pos_);
    }
    Word word;
    bool nonzero = true;
    if (need_word) {
      nonzero = generator(word, coeff) && nonzero;
      while (true) {
        skip_ws();
        if (peek() != '.') break;
        ++pos_;
        nonzero = generator(word, coeff) && nonzero;
      }
    }
    if (!nonzero || sgn(coeff) == 0) return;
    auto [it, inserted] = terms.try_emplace(word, coeff);
    if (!inserted) it->second += coeff;
  }

  const EnvelopingPtr& algebra_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QPoly parse_polynomial(const EnvelopingPtr& algebra, std::string_view text) {
  return PolynomialParser(algebra, text).run();
}

}  // namespace envalg
