#include "spectra/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spectra/errors.hpp"
#include "spectra/qr.hpp"

namespace spectra {

namespace {

void require_square_upper(const Matrix& r, const char* what) {
  if (r.empty() || r.rows() != r.cols()) throw DimensionError(std::string(what) + ": need a square matrix");
}

void check_diagonal(const Matrix& r, const char* what) {
  for (std::size_t i = 0; i < r.rows(); ++i) {
    if (r(i, i) == 0.0) {
      throw SingularityError(std::string(what) + ": zero diagonal entry at index " + std::to_string(i), i);
    }
  }
}

}  // namespace

Vector column_norms(const Matrix& m) {
  Vector g(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) g[j] = norm2(m.col(j));
  return g;
}

Vector solve_upper(const Matrix& r, std::span<const double> b) {
  require_square_upper(r, "solve_upper");
  check_diagonal(r, "solve_upper");
  const std::size_t n = r.rows();
  if (b.size() != n) throw DimensionError("solve_upper: right-hand side length mismatch");
  Vector x(b.begin(), b.end());
  // Column-oriented back substitution.
  for (std::size_t j = n; j-- > 0;) {
    x[j] /= r(j, j);
    const double xj = x[j];
    const auto cj = r.col(j);
    for (std::size_t i = 0; i < j; ++i) x[i] -= cj[i] * xj;
  }
  return x;
}

Vector solve_upper_transposed(const Matrix& r, std::span<const double> b) {
  require_square_upper(r, "solve_upper_transposed");
  check_diagonal(r, "solve_upper_transposed");
  const std::size_t n = r.rows();
  if (b.size() != n) throw DimensionError("solve_upper_transposed: right-hand side length mismatch");
  Vector x(b.begin(), b.end());
  for (std::size_t j = 0; j < n; ++j) {
    const auto cj = r.col(j);
    x[j] = (x[j] - dot(cj.first(j), std::span<const double>(x).first(j))) / r(j, j);
  }
  return x;
}

Matrix solve_upper(const Matrix& r, const Matrix& b) {
  Matrix x(b.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    const Vector col = solve_upper(r, b.col(c));
    std::copy(col.begin(), col.end(), x.col(c).begin());
  }
  return x;
}

Vector inverse_row_norms(const Matrix& r11) {
  require_square_upper(r11, "inverse_row_norms");
  r11.require_finite("inverse_row_norms");
  check_diagonal(r11, "inverse_row_norms");
  const std::size_t k = r11.rows();
  Vector omega(k);
  Vector z(k);
  for (std::size_t i = 0; i < k; ++i) {
    // z = r11⁻ᵀ e_i is row i of r11⁻¹; its entries before i vanish.
    std::fill(z.begin(), z.end(), 0.0);
    z[i] = 1.0 / r11(i, i);
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto cj = r11.col(j);
      double s = 0.0;
      for (std::size_t p = i; p < j; ++p) s += cj[p] * z[p];
      z[j] = -s / r11(j, j);
    }
    omega[i] = norm2(z);
  }
  return omega;
}

double log_volume(const Matrix& m) {
  if (m.empty()) throw DomainError("volume: empty matrix");
  if (m.cols() > m.rows()) throw DimensionError("volume: more columns than rows");
  const PartialQR qr = partial_qr(m, m.cols());
  double acc = 0.0;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    const double d = std::abs(qr.r()(i, i));
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(d);
  }
  return acc;
}

double volume(const Matrix& m) {
  const double lv = log_volume(m);
  return std::isinf(lv) ? 0.0 : std::exp(lv);
}

namespace {

struct LeastSquares {
  double residual;
  Vector x;
};

LeastSquares least_squares(const Matrix& a, std::span<const double> b) {
  if (a.empty()) throw DomainError("ls_residual: empty matrix");
  if (b.size() != a.rows()) throw DimensionError("ls_residual: right-hand side length mismatch");
  a.require_finite("ls_residual");

  const std::size_t k = std::min(a.rows(), a.cols());
  const PartialQR qr = column_pivoted_qr(a, k);
  const double threshold = 1e-14 * a.frobenius_norm();
  std::size_t rank = 0;
  while (rank < k && std::abs(qr.r()(rank, rank)) > threshold) ++rank;

  const Matrix qtb = qr.apply_qt(Matrix::column(b));
  const auto c = qtb.col(0);

  LeastSquares out{norm2(c.subspan(rank)), Vector(a.cols(), 0.0)};
  if (rank > 0) {
    const Matrix r_lead = qr.r().block(0, 0, rank, rank);
    const Vector y = solve_upper(r_lead, c.first(rank));
    for (std::size_t p = 0; p < rank; ++p) out.x[qr.perm()[p]] = y[p];
  }
  return out;
}

}  // namespace

double ls_residual(const Matrix& a, std::span<const double> b) { return least_squares(a, b).residual; }

Vector ls_solve(const Matrix& a, std::span<const double> b) { return least_squares(a, b).x; }

double cos_angle(std::span<const double> v1, std::span<const double> v2) {
  if (v1.size() != v2.size()) throw DimensionError("cos_angle: length mismatch");
  const double n1 = norm2(v1);
  const double n2 = norm2(v2);
  if (n1 == 0.0 || n2 == 0.0) throw DomainError("cos_angle: zero vector");
  return std::clamp(dot(v1, v2) / n1 / n2, -1.0, 1.0);
}

Matrix orthonormal_basis(const Matrix& m) {
  if (m.empty()) throw DomainError("orthonormal_basis: empty matrix");
  if (m.cols() > m.rows()) throw DimensionError("orthonormal_basis: more columns than rows");
  return partial_qr(m, m.cols()).thin_q();
}

double cos_angle_subspace(std::span<const double> v, const Matrix& basis) {
  if (v.size() != basis.rows()) throw DimensionError("cos_angle_subspace: length mismatch");
  const double nv = norm2(v);
  if (nv == 0.0) throw DomainError("cos_angle_subspace: zero vector");
  const Matrix q = orthonormal_basis(basis);
  Vector coeffs(q.cols());
  for (std::size_t j = 0; j < q.cols(); ++j) coeffs[j] = dot(q.col(j), v);
  return std::clamp(norm2(coeffs) / nv, 0.0, 1.0);
}

}  // namespace spectra
