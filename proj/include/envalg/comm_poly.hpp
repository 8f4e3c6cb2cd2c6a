#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "envalg/rational.hpp"

namespace envalg {

/// Sparse commutative polynomial over Q in variables indexed 0, 1, 2, ...
///
/// Exponent vectors carry no trailing zeros, so a constant has the empty
/// exponent vector and polynomials over different variable counts combine
/// freely. Zero coefficients are never stored.
class CommPoly {
 public:
  using Exponents = std::vector<std::uint16_t>;
  using TermMap = std::map<Exponents, Rational>;

  CommPoly() = default;
  CommPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  CommPoly(long constant) : CommPoly(Rational(constant)) {}  // NOLINT
  CommPoly(int constant) : CommPoly(Rational(constant)) {}   // NOLINT

  static CommPoly variable(std::size_t index);
  static CommPoly monomial(Exponents exponents, const Rational& coefficient);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (0 if absent).
  Rational constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Highest variable index used plus one.
  std::size_t variable_span() const;

  CommPoly homogeneous_part(int degree) const;
  /// Coefficient of var^power, as a polynomial in the remaining variables.
  CommPoly coefficient_of(std::size_t var, unsigned power) const;
  int degree_in(std::size_t var) const;
  CommPoly derivative(std::size_t var) const;
  /// Evaluates with point[i] substituted for variable i; missing values are 0.
  Rational evaluate(std::span<const Rational> point) const;
  /// Substitutes `value` for one variable, keeping the others symbolic.
  CommPoly substitute(std::size_t var, const Rational& value) const;

  CommPoly& operator+=(const CommPoly& other);
  CommPoly& operator-=(const CommPoly& other);
  CommPoly& operator*=(const Rational& scalar);
  /// Adds coefficient * (monomial with given exponents).
  void add_term(const Exponents& exponents, const Rational& coefficient);

  friend CommPoly operator+(CommPoly a, const CommPoly& b) { return a += b; }
  friend CommPoly operator-(CommPoly a, const CommPoly& b) { return a -= b; }
  friend CommPoly operator-(CommPoly a) {
    a *= Rational(-1);
    return a;
  }
  friend CommPoly operator*(const CommPoly& a, const CommPoly& b);
  friend CommPoly operator*(CommPoly a, const Rational& s) { return a *= s; }
  friend CommPoly operator*(const Rational& s, CommPoly a) { return a *= s; }
  friend CommPoly operator*(CommPoly a, long s) { return a *= Rational(s); }
  friend bool operator==(const CommPoly& a, const CommPoly& b) { return a.terms_ == b.terms_; }

  /// Formats as "c*x^e*y + ..." in descending term order using `name(var)`.
  std::string format(const std::function<std::string(std::size_t)>& name) const;

 private:
  TermMap terms_;
};

CommPoly pow(const CommPoly& base, unsigned exponent);

inline bool is_zero(const CommPoly& value) { return value.is_zero(); }

}  // namespace envalg
