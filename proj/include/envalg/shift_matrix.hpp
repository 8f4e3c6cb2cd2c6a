#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "envalg/comm_poly.hpp"
#include "envalg/lie_algebra.hpp"
#include "envalg/linalg.hpp"

namespace envalg {

/// Constant shift matrix over a block of labels of an algebra's index set.
///
/// Entries are commutative polynomials in the shift parameters a1, a2, ...
/// (variable k is a_{k+1}); a numeric matrix simply has constant entries.
class ShiftMatrix {
 public:
  ShiftMatrix(AlgebraSpec spec, std::vector<int> labels, std::vector<CommPoly> entries);
  static ShiftMatrix from_numeric(AlgebraSpec spec, std::vector<int> labels, const RationalMatrix& m);

  const AlgebraSpec& spec() const { return spec_; }
  const std::vector<int>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  const CommPoly& entry(std::size_t a, std::size_t b) const { return entries_[a * size() + b]; }
  /// Entry at a pair of labels of the block.
  const CommPoly& at(int i, int j) const;

  bool is_numeric() const;
  /// Throws std::logic_error unless is_numeric().
  RationalMatrix numeric() const;
  std::size_t parameter_count() const;

  /// Signs s in {-1, +1} with A_ij = s eps_i eps_j A_{-j,-i} on the block;
  /// both for A = 0, none for a sign-violating A, always {} for gl.
  std::vector<int> symmetry_signs() const;

  /// Requested sign of the shift condition; set by the caller when a result
  /// depends on it, validated by `require_declared_sign`.
  std::optional<int> declared_sign;
  std::string description;

  void require_declared_sign() const;

 private:
  AlgebraSpec spec_;
  std::vector<int> labels_;
  std::vector<CommPoly> entries_;
};

/// Parses a shift designator against a label block:
///   diag:1,2,0          diagonal along the block's label order
///   sym-diag:a1,-a2,0   diagonal with parameter entries
///   rows:1,2;3,4        full matrix, rows separated by ';'
///   anything else       path of a text file with one matrix row per line
/// Throws std::invalid_argument on malformed input or size mismatch.
ShiftMatrix parse_shift(const AlgebraSpec& spec, const std::vector<int>& labels, std::string_view designator);
inline ShiftMatrix parse_shift(const AlgebraSpec& spec, std::string_view designator) {
  return parse_shift(spec, spec.index_set(), designator);
}

/// Rank and semisimplicity of a numeric shift; both require is_numeric().
std::size_t matrix_rank(const ShiftMatrix& a);
bool is_semisimple(const ShiftMatrix& a);

/// Whether the block's matrix lies in the family's matrix algebra
/// (A = -sigma(A) on the block for so/sp).
bool in_matrix_algebra(const ShiftMatrix& a);

/// Deterministic pseudo-random integer matrix over the block satisfying the
/// shift condition with sign s (s = 0: no condition imposed, entries generic).
RationalMatrix random_shift_matrix(const AlgebraSpec& spec, const std::vector<int>& labels, int sign,
                                   std::uint64_t seed, int bound = 5);

/// (sigma M)_ij = eps_i eps_j M_{-j,-i} restricted to a label block closed
/// under negation.
RationalMatrix sigma_transpose(const AlgebraSpec& spec, const std::vector<int>& labels, const RationalMatrix& m);

}  // namespace envalg
