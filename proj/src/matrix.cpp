#include "tpsharp/matrix.hpp"

#include <string>

#include "tpsharp/error.hpp"

namespace tpsharp {

namespace {

void check_increasing(std::span<const std::size_t> idx, const char* what) {
  if (idx.empty()) throw Error(ErrorCode::ShapeMismatch, std::string("empty ") + what + " index list");
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (idx[t] == 0) throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " indices are 1-based");
    if (t > 0 && idx[t] <= idx[t - 1]) {
      throw Error(ErrorCode::NotStrictlyIncreasing,
                  std::string(what) + " indices must be strictly increasing");
    }
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::ShapeMismatch, "entry count does not match rows x cols");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Scalar> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), cols, std::move(entries));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) m.set(i, i, Scalar(1));
  return m;
}

std::size_t Matrix::index(std::size_t i, std::size_t j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                    std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix",
                Error::Position{i, j});
  }
  return (i - 1) * cols_ + (j - 1);
}

const Scalar& Matrix::operator()(std::size_t i, std::size_t j) const { return entries_[index(i, j)]; }

void Matrix::set(std::size_t i, std::size_t j, Scalar value) { entries_[index(i, j)] = std::move(value); }

bool Matrix::is_exact() const {
  for (const auto& e : entries_) {
    if (!e.is_exact()) return false;
  }
  return true;
}

bool Matrix::all_positive() const { return !first_nonpositive().has_value(); }

bool Matrix::all_nonnegative() const {
  for (const auto& e : entries_) {
    if (e.sign() < 0) return false;
  }
  return true;
}

std::optional<Cell> Matrix::first_nonpositive() const {
  for (std::size_t t = 0; t < entries_.size(); ++t) {
    if (entries_[t].sign() <= 0) return Cell{t / cols_ + 1, t % cols_ + 1};
  }
  return std::nullopt;
}

Matrix Matrix::to_approx() const {
  std::vector<Scalar> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.to_approx());
  return Matrix(rows_, cols_, std::move(out));
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

SubmatrixSelector::SubmatrixSelector(std::vector<std::size_t> rows, std::vector<std::size_t> cols)
    : rows_(std::move(rows)), cols_(std::move(cols)) {
  check_increasing(rows_, "row");
  check_increasing(cols_, "column");
  if (rows_.size() != cols_.size()) {
    throw Error(ErrorCode::ShapeMismatch, "minor selector needs as many rows as columns");
  }
}

SubmatrixSelector SubmatrixSelector::contiguous(std::size_t first_row, std::size_t first_col,
                                                std::size_t order) {
  std::vector<std::size_t> r(order), c(order);
  for (std::size_t t = 0; t < order; ++t) {
    r[t] = first_row + t;
    c[t] = first_col + t;
  }
  return SubmatrixSelector(std::move(r), std::move(c));
}

Matrix submatrix(const Matrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  check_increasing(rows, "row");
  check_increasing(cols, "column");
  if (rows.back() > m.rows() || cols.back() > m.cols()) {
    throw Error(ErrorCode::IndexOutOfRange, "selector exceeds matrix shape",
                Error::Position{rows.back(), cols.back()});
  }
  std::vector<Scalar> entries;
  entries.reserve(rows.size() * cols.size());
  for (std::size_t r : rows) {
    for (std::size_t c : cols) entries.push_back(m(r, c));
  }
  return Matrix(rows.size(), cols.size(), std::move(entries));
}

Matrix submatrix(const Matrix& m, const SubmatrixSelector& sel) {
  return submatrix(m, std::span<const std::size_t>(sel.rows()), std::span<const std::size_t>(sel.cols()));
}

Matrix toeplitz_from(const std::map<int, Scalar>& diag_values, std::size_t n) {
  Matrix m(n, n);
  const int nn = static_cast<int>(n);
  for (const auto& [offset, value] : diag_values) {
    if (offset <= -nn || offset >= nn) continue;
    for (int i = 1; i <= nn; ++i) {
      int j = i + offset;
      if (j >= 1 && j <= nn) m.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), value);
    }
  }
  return m;
}

std::optional<std::map<int, Scalar>> toeplitz_offsets(const Matrix& m) {
  if (!m.is_square() || m.rows() == 0) return std::nullopt;
  const int n = static_cast<int>(m.rows());
  std::map<int, Scalar> out;
  for (int d = -(n - 1); d <= n - 1; ++d) {
    std::size_t i0 = d >= 0 ? 1 : static_cast<std::size_t>(1 - d);
    std::size_t j0 = d >= 0 ? static_cast<std::size_t>(1 + d) : 1;
    const Scalar& v = m(i0, j0);
    for (std::size_t i = i0, j = j0; i <= m.rows() && j <= m.cols(); ++i, ++j) {
      if (!(m(i, j) == v) || m(i, j).is_exact() != v.is_exact()) return std::nullopt;
    }
    out.emplace(d, v);
  }
  return out;
}

Matrix hankel_from(std::span<const Scalar> seq, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::BadDomain, "Hankel order must be positive");
  if (seq.size() < 2 * n - 1) {
    throw Error(ErrorCode::TooShort, "Hankel matrix of order " + std::to_string(n) + " needs " +
                                         std::to_string(2 * n - 1) + " terms, got " +
                                         std::to_string(seq.size()));
  }
  Matrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) m.set(i, j, seq[i + j - 2]);
  }
  return m;
}

std::optional<BandProfile> band_profile(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return std::nullopt;
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  // Each diagonal must be entirely positive or entirely zero.
  std::optional<int> s, l;
  bool gap_seen = false;
  for (int d = -(rows - 1); d <= cols - 1; ++d) {
    bool any_pos = false, any_zero = false;
    for (int i = 1; i <= rows; ++i) {
      int j = i + d;
      if (j < 1 || j > cols) continue;
      int sg = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).sign();
      if (sg < 0) return std::nullopt;
      (sg > 0 ? any_pos : any_zero) = true;
    }
    if (any_pos && any_zero) return std::nullopt;
    if (any_pos) {
      if (gap_seen) return std::nullopt;
      if (!s) s = d;
      l = d;
    } else if (s) {
      gap_seen = true;
    }
  }
  if (!s) return std::nullopt;
  return BandProfile{*s, *l};
}

}  // namespace tpsharp
