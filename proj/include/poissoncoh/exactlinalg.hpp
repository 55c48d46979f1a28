#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poissoncoh/rational.hpp"

namespace poissoncoh {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const std::vector<Rational>& entries() const { return entries_; }

  RationalMatrix transpose() const;
  RationalVector operator*(const RationalVector& x) const;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  bool is_zero() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> entries_;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<RationalVector> kernel_basis;
};

/// Fraction-free (Bareiss) elimination, then back-substitution to reduced
/// row-echelon form. Kernel vectors have a 1 in their free column and zeros
/// in the other free columns.
RankKernel rank_and_kernel(const RationalMatrix& m);

struct RowEchelon {
  RationalMatrix rref;               // rank() x cols, fully reduced
  std::vector<std::size_t> pivots;
};
RowEchelon row_echelon(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// One solution of m x = b (free variables set to zero), or nullopt.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);

// ---------------------------------------------------------------------------
// Sparse support for the large graded-slice differentials.

using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;  // sorted by index, no zeros

/// Sparse matrix assembled from (row, col, value) triples; duplicate
/// positions are summed.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  void add(std::size_t r, std::size_t c, const Rational& v);
  /// Column c as a sparse vector over row indices.
  SparseVector column(std::size_t c) const;
  std::vector<SparseVector> columns() const;
  std::size_t nonzeros() const { return entries_.size(); }
  const std::map<std::pair<std::uint32_t, std::uint32_t>, Rational>& entries() const { return entries_; }

  RationalMatrix to_dense() const;
  /// this * other; throws on shape mismatch.
  SparseMatrix multiply(const SparseMatrix& other) const;
  bool is_zero() const { return entries_.empty(); }

 private:
  std::size_t rows_, cols_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> entries_;  // keyed (col, row)
};

/// Incrementally maintained echelon basis of a subspace of Q^n. Each stored
/// vector has leading coefficient 1 at a distinct pivot index.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim = 0) : dim_(dim) {}

  /// Reduces v against the basis; returns the residue (zero iff v lies in the span).
  SparseVector reduce(SparseVector v) const;
  /// Adds v if independent. Returns true when the rank grew.
  bool insert(SparseVector v);
  std::size_t rank() const { return pivots_.size(); }
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

 private:
  std::size_t dim_;
  std::map<std::uint32_t, SparseVector> pivots_;  // pivot index -> normalized row
};

std::size_t sparse_rank(const SparseMatrix& m);

/// Kernel basis of m (vectors over column indices).
std::vector<SparseVector> sparse_kernel(const SparseMatrix& m);

/// Representatives of a basis of span(cocycles) / span(boundaries), taken
/// from the given cocycle list (boundaries must lie in the cocycle span).
std::vector<SparseVector> quotient_representatives(const std::vector<SparseVector>& boundaries,
                                                   const std::vector<SparseVector>& cocycles, std::size_t dim);

/// One solution of m x = b, or nullopt.
std::optional<SparseVector> sparse_solve(const SparseMatrix& m, const SparseVector& b);

SparseVector to_sparse(const RationalVector& v);
RationalVector to_dense(const SparseVector& v, std::size_t dim);
SparseVector axpy(const SparseVector& y, const Rational& a, const SparseVector& x);  // y + a x

}  // namespace poissoncoh
