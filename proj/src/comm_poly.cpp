#include "envalg/comm_poly.hpp"

#include <algorithm>
#include <sstream>

namespace envalg {

namespace {

void trim(CommPoly::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

CommPoly::Exponents add_exponents(const CommPoly::Exponents& a, const CommPoly::Exponents& b) {
  CommPoly::Exponents out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = static_cast<std::uint16_t>(out[i] + b[i]);
  return out;
}

int total_degree(const CommPoly::Exponents& e) {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

}  // namespace

CommPoly::CommPoly(const Rational& constant) {
  if (sgn(constant) != 0) terms_.emplace(Exponents{}, constant);
}

CommPoly CommPoly::variable(std::size_t index) {
  Exponents e(index + 1, 0);
  e[index] = 1;
  return monomial(std::move(e), Rational(1));
}

CommPoly CommPoly::monomial(Exponents exponents, const Rational& coefficient) {
  CommPoly p;
  trim(exponents);
  if (sgn(coefficient) != 0) p.terms_.emplace(std::move(exponents), coefficient);
  return p;
}

bool CommPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational CommPoly::constant_term() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int CommPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

std::size_t CommPoly::variable_span() const {
  std::size_t span = 0;
  for (const auto& [e, c] : terms_) span = std::max(span, e.size());
  return span;
}

CommPoly CommPoly::homogeneous_part(int degree) const {
  CommPoly out;
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == degree) out.terms_.emplace(e, c);
  return out;
}

CommPoly CommPoly::coefficient_of(std::size_t var, unsigned power) const {
  CommPoly out;
  for (const auto& [e, c] : terms_) {
    unsigned have = var < e.size() ? e[var] : 0;
    if (have != power) continue;
    Exponents rest = e;
    if (var < rest.size()) rest[var] = 0;
    trim(rest);
    out.add_term(rest, c);
  }
  return out;
}

int CommPoly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_)
    if (var < e.size()) d = std::max<int>(d, e[var]);
  return d;
}

CommPoly CommPoly::derivative(std::size_t var) const {
  CommPoly out;
  for (const auto& [e, c] : terms_) {
    if (var >= e.size() || e[var] == 0) continue;
    Exponents d = e;
    Rational coeff = c * static_cast<long>(d[var]);
    d[var] = static_cast<std::uint16_t>(d[var] - 1);
    trim(d);
    out.add_term(d, coeff);
  }
  return out;
}

Rational CommPoly::evaluate(std::span<const Rational> point) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size() && sgn(term) != 0; ++i) {
      if (e[i] == 0) continue;
      if (i >= point.size()) {
        term = 0;
        break;
      }
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), e[i]);
      term *= p;
    }
    total += term;
  }
  return total;
}

CommPoly CommPoly::substitute(std::size_t var, const Rational& value) const {
  CommPoly out;
  for (const auto& [e, c] : terms_) {
    if (var >= e.size() || e[var] == 0) {
      out.add_term(e, c);
      continue;
    }
    Rational p;
    mpz_pow_ui(p.get_num_mpz_t(), value.get_num_mpz_t(), e[var]);
    mpz_pow_ui(p.get_den_mpz_t(), value.get_den_mpz_t(), e[var]);
    Exponents rest = e;
    rest[var] = 0;
    trim(rest);
    out.add_term(rest, c * p);
  }
  return out;
}

void CommPoly::add_term(const Exponents& exponents, const Rational& coefficient) {
  if (sgn(coefficient) == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (sgn(it->second) == 0) terms_.erase(it);
}

CommPoly& CommPoly::operator+=(const CommPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

CommPoly& CommPoly::operator-=(const CommPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

CommPoly& CommPoly::operator*=(const Rational& scalar) {
  if (sgn(scalar) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

CommPoly operator*(const CommPoly& a, const CommPoly& b) {
  CommPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(add_exponents(ea, eb), ca * cb);
  return out;
}

CommPoly pow(const CommPoly& base, unsigned exponent) {
  CommPoly result(1);
  for (unsigned i = 0; i < exponent; ++i) result = result * base;
  return result;
}

std::string CommPoly::format(const std::function<std::string(std::size_t)>& name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Higher total degree first, then the reverse of the exponent order.
  std::vector<const TermMap::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](auto* x, auto* y) {
    int dx = total_degree(x->first), dy = total_degree(y->first);
    if (dx != dy) return dx > dy;
    return x->first > y->first;
  });
  for (const auto* term : order) {
    if (!first) os << " + ";
    first = false;
    const auto& [e, c] = *term;
    bool has_vars = !e.empty();
    if (!has_vars || c != 1) {
      os << c.get_str();
      if (has_vars) os << '*';
    }
    bool first_var = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_var) os << '*';
      first_var = false;
      os << name(i);
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

}  // namespace envalg
