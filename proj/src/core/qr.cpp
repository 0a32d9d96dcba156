#include "spectra/qr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectra/errors.hpp"

namespace spectra {

namespace detail {

double make_reflector(std::span<double> x) noexcept {
  if (x.empty()) return 0.0;
  const double alpha = x[0];
  const auto tail = x.subspan(1);
  const double xnorm = norm2(tail);

  if (xnorm == 0.0) {
    if (alpha >= 0.0) return 0.0;
    // Pure sign flip: H = I - 2 e1 e1ᵀ.
    x[0] = -alpha;
    return 2.0;
  }
  const double beta = std::hypot(alpha, xnorm);
  if (alpha > 0.0 && xnorm <= 1e-150 * alpha) {
    // The rotation is below rounding of alpha; dropping the tail is backward stable.
    std::fill(tail.begin(), tail.end(), 0.0);
    return 0.0;
  }
  // v1 = alpha - beta, evaluated without cancellation when alpha > 0.
  const double v1 = alpha <= 0.0 ? alpha - beta : -(xnorm / (alpha + beta)) * xnorm;
  const double tau = -v1 / beta;
  const double inv = 1.0 / v1;
  for (double& t : tail) t *= inv;
  x[0] = beta;
  return tau;
}

void apply_reflector(std::span<const double> vtail, double tau, std::span<double> y) noexcept {
  if (tau == 0.0) return;
  const double w = tau * (y[0] + dot(vtail, y.subspan(1)));
  y[0] -= w;
  axpy(-w, vtail, y.subspan(1));
}

std::size_t pick_pivot(std::span<const double> norms) noexcept {
  double best = 0.0;
  for (double v : norms) best = std::max(best, v);
  const double threshold = best * (1.0 - kPivotTieTolerance);
  for (std::size_t p = 0; p < norms.size(); ++p)
    if (norms[p] >= threshold) return p;
  return 0;
}

}  // namespace detail

namespace {

struct SweepResult {
  Matrix reflectors;
  Vector tau;
  Permutation perm;
};

// Householder sweep over the first k columns of w, in place. With `pivot`
// set, each step first moves the trailing column of largest norm into place.
SweepResult householder_sweep(Matrix& w, std::size_t k, bool pivot, bool keep_reflectors) {
  const std::size_t m = w.rows();
  const std::size_t n = w.cols();
  SweepResult out{keep_reflectors ? Matrix(m, k) : Matrix{}, Vector(k, 0.0), Permutation(n)};

  Vector norms;
  Vector reference;
  if (pivot) {
    norms.resize(n);
    for (std::size_t p = 0; p < n; ++p) norms[p] = norm2(w.col(p));
    reference = norms;
  }

  for (std::size_t j = 0; j < k; ++j) {
    if (pivot) {
      const std::size_t best = j + detail::pick_pivot(std::span<const double>(norms).subspan(j));
      if (best != j) {
        w.swap_columns(j, best);
        std::swap(norms[j], norms[best]);
        std::swap(reference[j], reference[best]);
        out.perm.swap(j, best);
      }
    }

    auto x = w.col(j).subspan(j);
    const double tau = detail::make_reflector(x);
    out.tau[j] = tau;
    const auto vtail = x.subspan(1);
    for (std::size_t p = j + 1; p < n; ++p) detail::apply_reflector(vtail, tau, w.col(p).subspan(j));
    if (keep_reflectors) std::copy(vtail.begin(), vtail.end(), out.reflectors.col(j).begin() + j + 1);
    std::fill(vtail.begin(), vtail.end(), 0.0);

    if (pivot) {
      for (std::size_t p = j + 1; p < n; ++p) {
        if (norms[p] == 0.0) continue;
        const double r = w(j, p);
        const double downdated = norms[p] * norms[p] - r * r;
        if (downdated < 0.5 * reference[p] * reference[p]) {
          norms[p] = j + 1 < m ? norm2(w.col(p).subspan(j + 1)) : 0.0;
          reference[p] = norms[p];
        } else {
          norms[p] = std::sqrt(downdated);
        }
      }
    }
  }
  return out;
}

void check_rank(const Matrix& m, std::size_t k, const char* what) {
  if (m.empty()) throw DomainError(std::string(what) + ": empty matrix");
  m.require_finite(what);
  if (k < 1 || k > std::min(m.rows(), m.cols())) {
    throw DomainError(std::string(what) + ": k = " + std::to_string(k) + " outside [1, " +
                      std::to_string(std::min(m.rows(), m.cols())) + "]");
  }
}

}  // namespace

PartialQR::PartialQR(Matrix r, std::size_t k, Permutation perm, Matrix reflectors, Vector tau)
    : r_(std::move(r)),
      k_(k),
      perm_(std::move(perm)),
      reflectors_(std::move(reflectors)),
      tau_(std::move(tau)) {
  if (perm_.size() != r_.cols()) throw DimensionError("PartialQR: permutation size mismatch");
  if (k_ > std::min(r_.rows(), r_.cols())) throw DimensionError("PartialQR: k too large");
}

Matrix PartialQR::apply_q(Matrix x) const {
  if (!has_q()) throw DomainError("PartialQR: factorization carries no Q");
  if (x.rows() != rows()) throw DimensionError("apply_q: row count mismatch");
  for (std::size_t jj = k_; jj-- > 0;) {
    const auto vtail = reflectors_.col(jj).subspan(jj + 1);
    for (std::size_t c = 0; c < x.cols(); ++c)
      detail::apply_reflector(vtail, tau_[jj], x.col(c).subspan(jj));
  }
  return x;
}

Matrix PartialQR::apply_qt(Matrix x) const {
  if (!has_q()) throw DomainError("PartialQR: factorization carries no Q");
  if (x.rows() != rows()) throw DimensionError("apply_qt: row count mismatch");
  for (std::size_t jj = 0; jj < k_; ++jj) {
    const auto vtail = reflectors_.col(jj).subspan(jj + 1);
    for (std::size_t c = 0; c < x.cols(); ++c)
      detail::apply_reflector(vtail, tau_[jj], x.col(c).subspan(jj));
  }
  return x;
}

Matrix PartialQR::thin_q() const {
  Matrix e(rows(), k_);
  for (std::size_t j = 0; j < k_; ++j) e(j, j) = 1.0;
  return apply_q(std::move(e));
}

Matrix PartialQR::full_q() const { return apply_q(Matrix::identity(rows())); }

PartialQR partial_qr(const Matrix& m, std::size_t k) {
  if (k == 0) return partial_qr(m, 0, Permutation(m.cols()));
  check_rank(m, k, "partial_qr");
  Matrix w = m;
  auto sweep = householder_sweep(w, k, /*pivot=*/false, /*keep_reflectors=*/true);
  return PartialQR(std::move(w), k, std::move(sweep.perm), std::move(sweep.reflectors),
                   std::move(sweep.tau));
}

PartialQR partial_qr(const Matrix& m, std::size_t k, Permutation perm) {
  if (perm.size() != m.cols()) throw DimensionError("partial_qr: permutation size mismatch");
  Matrix w = perm.apply(m);
  if (k == 0) {
    if (w.empty()) throw DomainError("partial_qr: empty matrix");
    w.require_finite("partial_qr");
    return PartialQR(std::move(w), 0, std::move(perm));
  }
  check_rank(w, k, "partial_qr");
  auto sweep = householder_sweep(w, k, /*pivot=*/false, /*keep_reflectors=*/true);
  return PartialQR(std::move(w), k, std::move(perm), std::move(sweep.reflectors), std::move(sweep.tau));
}

PartialQR column_pivoted_qr(const Matrix& m, std::size_t k) {
  if (k == 0) return partial_qr(m, 0, Permutation(m.cols()));
  check_rank(m, k, "column_pivoted_qr");
  Matrix w = m;
  auto sweep = householder_sweep(w, k, /*pivot=*/true, /*keep_reflectors=*/true);
  return PartialQR(std::move(w), k, std::move(sweep.perm), std::move(sweep.reflectors),
                   std::move(sweep.tau));
}

Matrix pivoted_r_factor(const Matrix& m) {
  const std::size_t k = std::min(m.rows(), m.cols());
  check_rank(m, k, "pivoted_r_factor");
  Matrix w = m;
  householder_sweep(w, k, /*pivot=*/true, /*keep_reflectors=*/false);
  return w.block(0, 0, k, m.cols());
}

}  // namespace spectra
