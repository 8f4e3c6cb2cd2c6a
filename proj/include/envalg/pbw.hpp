#pragma once

#include <absl/container/flat_hash_map.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "envalg/comm_poly.hpp"
#include "envalg/lie_algebra.hpp"
#include "envalg/rational.hpp"

namespace envalg {

/// Letters are canonical generator ids; u8string gives short-string storage
/// and a standard hash.
using Letter = char8_t;
using Word = std::u8string;

inline bool is_sorted_word(const Word& w) {
  for (std::size_t k = 1; k < w.size(); ++k)
    if (w[k - 1] > w[k]) return false;
  return true;
}

/// Normal-ordered product with small integer coefficients.
using KernelTerms = std::vector<std::pair<Word, std::int64_t>>;

/// U(g) for one AlgebraSpec: the structure constants plus a memo of
/// "sorted word times generator" reductions shared by every polynomial of
/// the algebra. Obtain instances with `of()`; one instance exists per
/// algebra, so pointer identity is algebra identity.
class UniversalEnveloping {
 public:
  static std::shared_ptr<const UniversalEnveloping> of(const AlgebraSpec& spec);

  const AlgebraSpec& spec() const { return spec_; }

  /// Normal form of w * g where w is sorted. Calls `sink(word, coefficient)`
  /// once per nonzero term.
  template <class Sink>
  void right_multiply(const Word& w, Letter g, Sink&& sink) const {
    if (w.empty() || static_cast<Letter>(w.back()) <= g) {
      Word out = w;
      out.push_back(g);
      sink(out, std::int64_t{1});
      return;
    }
    auto terms = reduction(w, g);
    for (const auto& [word, coeff] : *terms) sink(word, coeff);
  }

  std::size_t cached_reductions() const;

  explicit UniversalEnveloping(AlgebraSpec spec) : spec_(std::move(spec)) {}

 private:
  std::shared_ptr<const KernelTerms> reduction(const Word& w, Letter g) const;
  KernelTerms compute_reduction(const Word& w, Letter g) const;

  AlgebraSpec spec_;
  mutable std::shared_mutex mutex_;
  mutable absl::flat_hash_map<Word, std::shared_ptr<const KernelTerms>> memo_;
};

using EnvelopingPtr = std::shared_ptr<const UniversalEnveloping>;

/// Exact linear combination of PBW words with coefficients in C
/// (Rational, or CommPoly for symbolic shift parameters).
///
/// Every public operation returns normal-ordered polynomials with no zero
/// coefficients; only `from_raw_terms` can hold unsorted words, which the
/// operations normalize on entry.
template <class C>
class NCPoly {
 public:
  using Coefficient = C;
  using TermTable = absl::flat_hash_map<Word, C>;

  explicit NCPoly(EnvelopingPtr algebra) : algebra_(std::move(algebra)) {}

  static NCPoly constant(EnvelopingPtr algebra, const C& value);
  /// The canonicalized generator X[i,j] (zero for so-type X[i,-i]).
  static NCPoly generator(EnvelopingPtr algebra, int i, int j);
  /// Arbitrary, possibly unsorted, words; call normal_form() before relying
  /// on canonical structure.
  static NCPoly from_raw_terms(EnvelopingPtr algebra, TermTable terms);

  const EnvelopingPtr& algebra() const { return algebra_; }
  const AlgebraSpec& spec() const { return algebra_->spec(); }
  const TermTable& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_normal() const;
  std::size_t size() const { return terms_.size(); }
  /// Highest word length; -1 for zero.
  int degree() const;
  NCPoly homogeneous_part(int degree) const;
  /// Coefficient of a word (zero if absent).
  C coefficient(const Word& w) const;

  void add_term(const Word& w, const C& c);
  NCPoly& operator+=(const NCPoly& other);
  NCPoly& operator-=(const NCPoly& other);
  NCPoly& operator*=(const C& scalar);

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator-(NCPoly a) {
    a *= C(-1);
    return a;
  }
  friend NCPoly operator*(NCPoly a, const C& s) { return a *= s; }
  friend NCPoly operator*(const C& s, NCPoly a) { return a *= s; }
  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    return a.algebra_ == b.algebra_ && a.terms_ == b.terms_;
  }

 private:
  EnvelopingPtr algebra_;
  TermTable terms_;
};

using QPoly = NCPoly<Rational>;
using ParamNCPoly = NCPoly<CommPoly>;

/// Thrown when operands belong to different algebras.
class MixedAlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rewrites every word to PBW order by repeatedly swapping the leftmost
/// out-of-order adjacent pair XY -> YX + [X,Y]; correction terms are queued
/// and reduced in turn.
template <class C>
NCPoly<C> normal_form(const NCPoly<C>& p);

template <class C>
NCPoly<C> multiply(const NCPoly<C>& p, const NCPoly<C>& q);

template <class C>
NCPoly<C> commutator(const NCPoly<C>& p, const NCPoly<C>& q);

/// Multiplies by one generator on the right.
template <class C>
NCPoly<C> multiply_generator(const NCPoly<C>& p, int generator_id);

/// Replaces each coefficient c by f(c).
template <class From, class To>
NCPoly<To> map_coefficients(const NCPoly<From>& p, const std::function<To(const From&)>& f);

/// Splits a parametric polynomial by parameter monomial.
std::map<CommPoly::Exponents, QPoly> split_parameters(const ParamNCPoly& p);
ParamNCPoly join_parameters(const EnvelopingPtr& algebra, const std::map<CommPoly::Exponents, QPoly>& parts);

std::string format_word(const AlgebraSpec& spec, const Word& w);

/// Canonical text: terms by descending degree then ascending word order,
/// joined by " + "; unit coefficients omitted on words. Parametric
/// coefficients print as "(...)*word" with parameters named a1, a2, ...
/// unless `parameter_names` overrides them.
std::string format(const QPoly& p);
std::string format(const ParamNCPoly& p, const std::vector<std::string>& parameter_names = {});

/// Syntax error with the 0-based byte offset where parsing failed.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the polynomial grammar
///   polynomial := term ("+" term)* ; term := [coeff "*"] word | coeff
///   word := gen ("." gen)* ; gen := "X[" int "," int "]"
/// ignoring whitespace; the result is normal-ordered.
QPoly parse_polynomial(const EnvelopingPtr& algebra, std::string_view text);

}  // namespace envalg
