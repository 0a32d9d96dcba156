#include "spectra/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectra/errors.hpp"

namespace spectra {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix Matrix::from_col_major(std::size_t rows, std::size_t cols, std::vector<double> data) {
  if (data.size() != rows * cols) {
    throw DimensionError("from_col_major: data length " + std::to_string(data.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(data);
  m.require_finite("from_col_major");
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
  Matrix m(nr, nc);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != nc) throw DimensionError("from_rows: ragged row");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  m.require_finite("from_rows");
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values, std::size_t rows) {
  const std::size_t n = values.size();
  if (rows == 0) rows = n;
  if (rows < n) throw DimensionError("diagonal: fewer rows than diagonal entries");
  Matrix m(rows, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = values[i];
  m.require_finite("diagonal");
  return m;
}

Matrix Matrix::column(std::span<const double> values) {
  return from_col_major(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block: out of range");
  Matrix b(nr, nc);
  for (std::size_t j = 0; j < nc; ++j) {
    const double* src = data_.data() + (c0 + j) * rows_ + r0;
    std::copy(src, src + nr, b.data_.data() + j * nr);
  }
  return b;
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const {
  Matrix b(rows_, indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= cols_) throw DimensionError("select_columns: index out of range");
    auto src = col(indices[j]);
    std::copy(src.begin(), src.end(), b.col(j).begin());
  }
  return b;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

void Matrix::swap_columns(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * rows_, data_.begin() + (a + 1) * rows_,
                   data_.begin() + b * rows_);
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void Matrix::require_finite(const char* what) const {
  if (!all_finite()) throw DomainError(std::string(what) + ": matrix has non-finite entries");
}

double Matrix::frobenius_norm() const noexcept { return norm2(data_); }

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("operator+: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("operator-: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double alpha) noexcept {
  for (double& v : data_) v *= alpha;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double alpha, Matrix a) { return a *= alpha; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("operator*: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto cj = c.col(j);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double bpj = b(p, j);
      if (bpj != 0.0) axpy(bpj, a.col(p), cj);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionError("matvec: length mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t p = 0; p < a.cols(); ++p)
    if (x[p] != 0.0) axpy(x[p], a.col(p), y);
  return y;
}

Matrix transpose_times(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("transpose_times: row counts differ");
  Matrix c(a.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) c(i, j) = dot(a.col(i), b.col(j));
  return c;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.rows() != b.rows()) throw DimensionError("hcat: row counts differ");
  Matrix c(a.rows(), a.cols() + b.cols());
  std::copy(a.data().begin(), a.data().end(), c.data().begin());
  std::copy(b.data().begin(), b.data().end(), c.data().begin() + a.size());
  return c;
}

Matrix vcat(const Matrix& a, const Matrix& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.cols() != b.cols()) throw DimensionError("vcat: column counts differ");
  Matrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::copy(a.col(j).begin(), a.col(j).end(), c.col(j).begin());
    std::copy(b.col(j).begin(), b.col(j).end(), c.col(j).begin() + a.rows());
  }
  return c;
}

Matrix pad_rows(const Matrix& m, std::size_t rows) {
  if (rows < m.rows()) throw DimensionError("pad_rows: target smaller than matrix");
  Matrix p(rows, m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    std::copy(m.col(j).begin(), m.col(j).end(), p.col(j).begin());
  return p;
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
  const std::size_t n = std::min(x.size(), y.size());
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < n; ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

double norm2(std::span<const double> x) noexcept {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  // Rescale only when squaring could leave the normal range.
  if (scale > 1e-140 && scale < 1e140) return std::sqrt(dot(x, x));
  double s = 0.0;
  for (double v : x) {
    const double t = v / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace spectra
