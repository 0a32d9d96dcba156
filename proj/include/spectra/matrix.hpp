#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spectra {

using Vector = std::vector<double>;

/// Dense column-major matrix of doubles.
///
/// Entries are addressed as `m(i, j)` with zero-based indices. Column `j`
/// occupies the contiguous range `[j * rows, (j + 1) * rows)` of the storage,
/// which is what every kernel in this library iterates over.
///
/// A default-constructed matrix is empty (0 x 0); empty blocks appear as
/// intermediate values (for instance R12 when k equals the column count) but
/// the public numerical operations reject empty inputs.
class Matrix {
 public:
  Matrix() = default;

  /// Zero-filled rows x cols matrix.
  Matrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of column-major data. Throws DomainError on non-finite entries
  /// and DimensionError when `data.size() != rows * cols`.
  static Matrix from_col_major(std::size_t rows, std::size_t cols, std::vector<double> data);

  /// Row-major literal, e.g. `Matrix::from_rows({{1, 2}, {3, 4}})`.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  /// `rows` x values.size() matrix with `values` on the diagonal; rows defaults to values.size().
  static Matrix diagonal(std::span<const double> values, std::size_t rows = 0);

  /// Single column.
  static Matrix column(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const noexcept {
    return {data_.data() + j * rows_, rows_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  /// Copy of the nr x nc block starting at (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  /// Copy of columns [c0, c0 + nc).
  Matrix columns(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }

  /// Copy of the columns listed in `indices`, in that order.
  Matrix select_columns(std::span<const std::size_t> indices) const;

  Matrix transposed() const;

  void swap_columns(std::size_t a, std::size_t b) noexcept;

  bool all_finite() const noexcept;

  /// Throws DomainError naming `what` when any entry is NaN or infinite.
  void require_finite(const char* what) const;

  double frobenius_norm() const noexcept;
  double max_abs() const noexcept;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double alpha) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double alpha, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

/// aᵀ·b without forming the transpose.
Matrix transpose_times(const Matrix& a, const Matrix& b);

/// Horizontal and vertical concatenation.
Matrix hcat(const Matrix& a, const Matrix& b);
Matrix vcat(const Matrix& a, const Matrix& b);

/// Zero-pads `m` below to `rows` rows (returns a copy when rows == m.rows()).
Matrix pad_rows(const Matrix& m, std::size_t rows);

double dot(std::span<const double> x, std::span<const double> y) noexcept;

/// Euclidean norm, scaled so that entries near the under/overflow thresholds are safe.
double norm2(std::span<const double> x) noexcept;

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;

}  // namespace spectra
