#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "envalg/linalg.hpp"

namespace envalg {

enum class Family { GL, SO_even, SO_odd, SP };

/// A raw matrix-unit label X[i,j] resolved against its canonical representative.
///
/// For gl every pair is canonical. For so/sp the relation
///   X[i,j] = -eps_i eps_j X[-j,-i]
/// identifies pairs; the representative is the lexicographically smaller of
/// (i,j) and (-j,-i). For so, X[i,-i] is the zero generator (sign 0).
struct GeneratorRef {
  int i = 0;               // canonical row label
  int j = 0;               // canonical column label
  bool canonical = true;   // the queried pair was already canonical
  int sign = 1;            // queried X = sign * X[i,j]; 0 marks the zero generator

  bool is_zero() const { return sign == 0; }
  friend bool operator==(const GeneratorRef&, const GeneratorRef&) = default;
};

struct GeneratorTerm {
  GeneratorRef generator;
  int coefficient = 0;
  friend bool operator==(const GeneratorTerm&, const GeneratorTerm&) = default;
};

/// Generator id paired with an integer coefficient.
using IdTerm = std::pair<int, int>;

/// One of gl(n), so(2n), so(2n+1), sp(n) in the signed-index realization.
///
/// Immutable; copies share the precomputed generator and structure-constant
/// tables.
class AlgebraSpec {
 public:
  Family family() const { return data_->family; }
  int n() const { return data_->n; }
  int matrix_size() const { return static_cast<int>(data_->index_set.size()); }
  const std::vector<int>& index_set() const { return data_->index_set; }
  bool is_symmetric_family() const { return data_->family != Family::GL; }

  /// eps_j = 1 for gl/so, sgn(j) for sp.
  int epsilon(int j) const;
  bool contains(int label) const;
  /// 0-based position of a label in the index set; throws std::out_of_range.
  std::size_t position(int label) const;

  /// "gl:3", "so:5", "sp:2".
  std::string designator() const;
  /// "gl(3)", "so(5)", "sp(2)".
  std::string name() const;

  /// Canonical nonzero generators in PBW order; a generator's id is its index.
  const std::vector<std::pair<int, int>>& generators() const { return data_->generators; }
  std::size_t dimension() const { return data_->generators.size(); }
  std::string generator_name(int id) const;

  struct Slot {
    int id = -1;   // -1 for the zero generator
    int sign = 0;  // raw X[i,j] = sign * generator(id)
  };
  /// Raw label pair to (generator id, sign); throws std::out_of_range.
  Slot slot(int i, int j) const;
  /// Same, by positions in the index set (no validation).
  Slot slot_at(std::size_t pi, std::size_t pj) const { return data_->slots[pi * index_set().size() + pj]; }

  /// [X_a, X_b] for canonical generator ids, as sorted (id, coefficient) terms.
  const std::vector<IdTerm>& structure(int a, int b) const {
    return data_->structure[static_cast<std::size_t>(a) * dimension() + static_cast<std::size_t>(b)];
  }

  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
    return a.data_ == b.data_ || (a.family() == b.family() && a.n() == b.n());
  }

 private:
  struct Data {
    Family family;
    int n;
    std::vector<int> index_set;
    std::vector<Slot> slots;
    std::vector<std::pair<int, int>> generators;
    std::vector<std::vector<IdTerm>> structure;
  };
  explicit AlgebraSpec(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;

  friend AlgebraSpec make_algebra(Family family, int n);
};

/// Throws std::invalid_argument for n < 1 or an out-of-range family value.
AlgebraSpec make_algebra(Family family, int n);

/// Parses "gl:n", "so:m" (family resolved by the parity of m), "sp:n".
AlgebraSpec parse_algebra(std::string_view designator);

GeneratorRef canonicalize(const AlgebraSpec& spec, int i, int j);

/// [X[i,j], X[k,l]] as a canonicalized degree-1 combination, sorted by
/// generator order with zero coefficients dropped.
std::vector<GeneratorTerm> bracket_structure(const AlgebraSpec& spec, std::pair<int, int> x,
                                             std::pair<int, int> y);

/// (dim g, ind g); the index uses the closed-form rank table.
std::pair<int, int> dimension_and_index(const AlgebraSpec& spec);

/// Image of X[i,j] in the defining representation:
/// E_ij for gl, E_ij - eps_i eps_j E_{-j,-i} for so/sp.
RationalMatrix defining_matrix(const AlgebraSpec& spec, int i, int j);

/// (sigma M)_{ij} = eps_i eps_j M_{-j,-i}; so/sp consist of M with sigma M = -M.
RationalMatrix sigma_transpose(const AlgebraSpec& spec, const RationalMatrix& m);

/// True iff m lies in the family's matrix algebra (always true for gl).
bool in_matrix_algebra(const AlgebraSpec& spec, const RationalMatrix& m);

/// Matrix entries of a point of g* given by generator coordinates:
/// M_{ij} = sign(i,j) * x[id(i,j)].
RationalMatrix coordinates_to_matrix(const AlgebraSpec& spec, std::span<const Rational> coordinates);

/// Generator coordinates of a matrix in the family's matrix algebra.
std::vector<Rational> matrix_to_coordinates(const AlgebraSpec& spec, const RationalMatrix& m);

}  // namespace envalg
