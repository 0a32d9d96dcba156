#include "spectra/svd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "spectra/errors.hpp"
#include "spectra/qr.hpp"

namespace spectra {

namespace {

constexpr int kMaxSweeps = 80;

// One-sided (Hestenes) Jacobi: rotates column pairs of x until all are
// numerically orthogonal. Returns the column norms.
Vector jacobi_column_norms(Matrix& x) {
  const std::size_t n = x.cols();
  const double tol = std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(x.rows()));

  Vector sq(n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      const double nrm = norm2(x.col(p));
      sq[p] = nrm * nrm;
    }
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double a = sq[p];
        const double b = sq[q];
        if (a == 0.0 || b == 0.0) continue;
        const double c = dot(x.col(p), x.col(q));
        if (std::abs(c) <= tol * std::sqrt(a) * std::sqrt(b)) continue;
        rotated = true;

        const double zeta = (b - a) / (2.0 * c);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double cs = 1.0 / std::hypot(1.0, t);
        const double sn = cs * t;

        auto xp = x.col(p);
        auto xq = x.col(q);
        for (std::size_t i = 0; i < xp.size(); ++i) {
          const double u = xp[i];
          const double v = xq[i];
          xp[i] = cs * u - sn * v;
          xq[i] = sn * u + cs * v;
        }
        sq[p] = std::max(a - t * c, 0.0);
        sq[q] = b + t * c;
      }
    }
    if (!rotated) break;
  }

  Vector norms(n);
  for (std::size_t p = 0; p < n; ++p) norms[p] = norm2(x.col(p));
  return norms;
}

}  // namespace

Vector singular_values(const Matrix& m) {
  if (m.empty()) throw DomainError("singular_values: empty matrix");
  m.require_finite("singular_values");

  const Matrix& tall_source = m;
  Matrix transposed;
  if (m.rows() < m.cols()) transposed = m.transposed();
  const Matrix& tall = m.rows() < m.cols() ? transposed : tall_source;

  // R is n x n upper triangular (n = tall.cols()); Jacobi acts on the columns of Rᵀ.
  Matrix x = pivoted_r_factor(tall).transposed();
  Vector sigma = jacobi_column_norms(x);
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

}  // namespace spectra
