#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tpsharp/scalar.hpp"

namespace tpsharp {

// 1-based (row, column) position.
struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/*
 * Dense rectangular matrix of Scalars.
 *
 * All indices at the API boundary are 1-based. Zero entries are allowed;
 * operations that need positivity check it themselves.
 */
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  // Checked 1-based access; throws IndexOutOfRange.
  const Scalar& operator()(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Scalar value);

  std::span<const Scalar> entries() const noexcept { return entries_; }

  bool is_exact() const;
  bool all_positive() const;
  bool all_nonnegative() const;
  // First (row-major) entry that is not strictly positive.
  std::optional<Cell> first_nonpositive() const;

  Matrix to_approx() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

// Equal-length strictly increasing 1-based row/column lists, i.e. the
// index set of a square minor.
class SubmatrixSelector {
 public:
  SubmatrixSelector() = default;
  SubmatrixSelector(std::vector<std::size_t> rows, std::vector<std::size_t> cols);

  // rows = cols = {first, ..., first + order - 1}
  static SubmatrixSelector contiguous(std::size_t first_row, std::size_t first_col, std::size_t order);

  const std::vector<std::size_t>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& cols() const noexcept { return cols_; }
  std::size_t order() const noexcept { return rows_.size(); }

  friend auto operator<=>(const SubmatrixSelector&, const SubmatrixSelector&) = default;
  friend bool operator==(const SubmatrixSelector&, const SubmatrixSelector&) = default;

 private:
  std::vector<std::size_t> rows_;
  std::vector<std::size_t> cols_;
};

Matrix submatrix(const Matrix& m, const SubmatrixSelector& sel);
// Rectangular selection; both lists strictly increasing, any lengths >= 1.
Matrix submatrix(const Matrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

// Entry (i, j) = diag_values[j - i]; missing offsets are zero.
Matrix toeplitz_from(const std::map<int, Scalar>& diag_values, std::size_t n);
// Offsets -(n-1)..(n-1) of a Toeplitz matrix, or nullopt if `m` is not
// Toeplitz.
std::optional<std::map<int, Scalar>> toeplitz_offsets(const Matrix& m);

// Entry (i, j) = seq[i + j - 2]; needs seq.size() >= 2n - 1 (TooShort).
Matrix hankel_from(std::span<const Scalar> seq, std::size_t n);

struct BandProfile {
  int s = 0;
  int l = 0;
  friend bool operator==(const BandProfile&, const BandProfile&) = default;
};

// (s, l) such that a_ij > 0 exactly when s <= j - i <= l and a_ij = 0
// elsewhere; nullopt when the support has any other shape.
std::optional<BandProfile> band_profile(const Matrix& m);

}  // namespace tpsharp
