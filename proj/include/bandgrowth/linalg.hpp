#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bandgrowth/field.hpp"

namespace bandgrowth {

/// Small dense matrix over a Field (row-major), used for blocks, Gram matrices
/// and the exact eliminations behind the flag and rank computations.
class DenseMatrix {
 public:
  DenseMatrix(Field field, std::size_t rows, std::size_t cols);

  static DenseMatrix identity(Field field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix transpose() const;
  /// Inverse by Gauss-Jordan; nullopt when singular.
  std::optional<DenseMatrix> inverse() const;
  std::size_t rank() const;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

using Vec = std::vector<Scalar>;

/// Incremental row echelon basis of a subspace of F^n (0-based coordinates).
/// Stored rows are fully reduced against each other's pivots.
class Echelon {
 public:
  Echelon(Field field, std::size_t dim) : field_(field), dim_(dim) {}

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  /// v minus its projection along the pivots (zero iff v lies in the span).
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  /// Adds v if independent; returns whether the rank grew.
  bool insert(const Vec& v);

 private:
  Field field_;
  std::size_t dim_;
  std::vector<Vec> rows_;          // pivot entry normalised to 1
  std::vector<std::size_t> pivots_;
};

using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

/// Outcome of testing a family of sparse vectors for linear independence.
struct IndependenceResult {
  std::size_t rank = 0;
  bool independent = true;
  /// When dependent: coefficients c_i (one per input, deterministic) with
  /// sum c_i v_i = 0 and the coefficient of the first dependent vector equal to 1.
  std::vector<Scalar> relation;
};

IndependenceResult independence(const Field& field, const std::vector<SparseVector>& vectors);

}  // namespace bandgrowth
