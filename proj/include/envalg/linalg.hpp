#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "envalg/rational.hpp"

namespace envalg {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Rational>& data() const { return data_; }

  bool is_zero() const;
  Rational trace() const;
  RationalMatrix transpose() const;

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

/// Exact rank by fraction-free (Bareiss) elimination over the integers after
/// clearing each row's denominators.
std::size_t rank(const RationalMatrix& m);

/// Reduced row echelon form, returning pivot column indices.
std::vector<std::size_t> rref_in_place(RationalMatrix& m);

/// Basis of {x : m x = 0}; vectors ordered by their free column, each with a
/// 1 in that column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

/// A solution of m x = rhs with free variables set to zero, or nullopt.
std::optional<std::vector<Rational>> solve(const RationalMatrix& m, std::span<const Rational> rhs);

/// Stacks the given vectors as rows.
RationalMatrix rows_matrix(const std::vector<std::vector<Rational>>& vectors, std::size_t width);

/// dim(span U ∩ span W) for row-vector spanning sets of equal width.
std::size_t intersection_dimension(const std::vector<std::vector<Rational>>& u,
                                   const std::vector<std::vector<Rational>>& w, std::size_t width);

/// Coefficients c_0..c_n of det(t I - m) = sum c_k t^k, by Faddeev–LeVerrier.
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);

/// True iff the minimal polynomial of m is squarefree, i.e. m is diagonalizable
/// over the algebraic closure.
bool is_semisimple(const RationalMatrix& m);

}  // namespace envalg
