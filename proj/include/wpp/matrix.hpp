#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wpp/common.hpp"

namespace wpp {

/// Dense exact integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  IntMatrix transpose() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  /// Rank over the rationals (fraction-free Bareiss elimination).
  std::size_t rank() const;
  Integer determinant() const;
  /// Nonzero invariant factors of the Smith normal form, in divisibility order.
  std::vector<Integer> smith_invariants() const;
  /// Basis of the rational kernel, each vector scaled to a primitive integer vector.
  std::vector<std::vector<Integer>> nullspace() const;
  bool is_upper_triangular() const;

  /// "rows cols nnz" then one "r c value" line per nonzero entry (0-based).
  std::string to_triplets() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> a_;
};

using SparseIntVector = std::map<int, Integer>;
using SparseRatVector = std::map<int, Rational>;

struct SmithResult {
  std::size_t rank = 0;
  /// Invariant factors other than 1 (the torsion coefficients), ascending.
  std::vector<Integer> torsion;
  std::size_t unit_pivots = 0;      // eliminated sparsely
  std::size_t dense_remainder = 0;  // rows left to the dense Smith form
};

/// Smith normal form of a sparse integer matrix given by its rows: repeated elimination at
/// unit entries (exact Schur complements), then a dense Smith form of what remains.
SmithResult sparse_smith(std::vector<SparseIntVector> rows);

/// Incremental row-echelon form over the rationals with monic pivots. Each stored row may
/// carry its expression in the inserted generators.
class RationalEchelon {
 public:
  explicit RationalEchelon(bool track = false) : track_(track) {}

  /// Returns true if v was independent of the rows inserted so far.
  bool insert(const SparseRatVector& v, int generator = -1);
  std::size_t rank() const { return rows_.size(); }
  bool contains(const SparseRatVector& v) const;
  /// Coefficients c_g with v = sum c_g * generator_g, if v lies in the span (tracking only).
  std::optional<SparseRatVector> express(const SparseRatVector& v) const;

 private:
  struct Row {
    SparseRatVector v;
    SparseRatVector combo;
  };
  /// Reduces v by leading terms; accumulates the subtracted multiples of generators.
  void reduce(SparseRatVector& v, SparseRatVector* combo) const;
  bool track_;
  std::map<int, Row> rows_;  // keyed by pivot (leading) column
};

SparseRatVector to_rational(const SparseIntVector& v);

}  // namespace wpp
