#include <algorithm>
#include <cmath>
#include <string>

#include "spectra/errors.hpp"
#include "spectra/geometry.hpp"
#include "spectra/srrqr.hpp"

namespace spectra {

namespace {

// Normwise relative difference, absolute when the reference is zero.
double relative_gap(std::span<const double> got, std::span<const double> want) {
  double scale = 0.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    scale = std::max(scale, std::abs(want[i]));
    diff = std::max(diff, std::abs(got[i] - want[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

SrrqrState::SrrqrState(const Matrix& m, bool recompute_maintained)
    : r_(m), perm_(m.cols()), a_(m.cols(), m.cols()), recompute_(recompute_maintained) {
  if (m.empty()) throw DomainError("srrqr: empty matrix");
  m.require_finite("srrqr");
  gamma_ = column_norms(m);
  gamma_ref_ = gamma_;
}

SrrqrState SrrqrState::from_partial(const Matrix& m, std::size_t k, bool recompute_maintained) {
  if (k > std::min(m.rows(), m.cols())) throw DomainError("from_partial: k out of range");
  SrrqrState s(m, recompute_maintained);
  while (s.k_ < k) s.step(s.k_);
  return s;
}

Vector SrrqrState::gamma() const { return Vector(gamma_.begin() + k_, gamma_.end()); }

Matrix SrrqrState::a() const { return a_.block(0, k_, k_, cols() - k_); }

double SrrqrState::max_gamma() const noexcept {
  if (k_ >= std::min(rows(), cols())) return 0.0;
  double g = 0.0;
  for (std::size_t p = k_; p < cols(); ++p) g = std::max(g, gamma_[p]);
  return g;
}

double SrrqrState::det_ratio(std::size_t i, std::size_t j) const {
  if (i >= k_ || j >= trailing()) throw DimensionError("det_ratio: index out of range");
  const std::size_t p = k_ + j;
  return std::hypot(a_(i, p), omega_[i] * gamma_[p]);
}

double SrrqrState::rho() const noexcept {
  double best = 0.0;
  for (std::size_t p = k_; p < cols(); ++p)
    for (std::size_t i = 0; i < k_; ++i) best = std::max(best, std::hypot(a_(i, p), omega_[i] * gamma_[p]));
  return best;
}

double SrrqrState::rho_hat() const noexcept {
  if (k_ == 0 || k_ == cols()) return 0.0;
  double amax = 0.0;
  double gmax = 0.0;
  for (std::size_t p = k_; p < cols(); ++p) {
    gmax = std::max(gmax, gamma_[p]);
    for (std::size_t i = 0; i < k_; ++i) amax = std::max(amax, std::abs(a_(i, p)));
  }
  const double wmax = *std::max_element(omega_.begin(), omega_.end());
  return std::max(amax, wmax * gmax);
}

std::optional<std::pair<std::size_t, std::size_t>> SrrqrState::find_interchange(double threshold) const noexcept {
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t p = k_; p < cols(); ++p)
      if (std::hypot(a_(i, p), omega_[i] * gamma_[p]) > threshold) return std::pair{i, p - k_};
  return std::nullopt;
}

double SrrqrState::log_abs_det_r11() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < k_; ++i) acc += std::log(std::abs(r_(i, i)));
  return acc;
}

double SrrqrState::advance() {
  if (k_ >= std::min(rows(), cols())) throw DomainError("advance: no trailing column left");
  const std::span<const double> tail(gamma_.data() + k_, cols() - k_);
  return step(k_ + detail::pick_pivot(tail));
}

double SrrqrState::step(std::size_t p) {
  const std::size_t n = cols();
  const std::size_t k = k_;
  if (p != k) {
    r_.swap_columns(k, p);
    a_.swap_columns(k, p);
    std::swap(gamma_[k], gamma_[p]);
    std::swap(gamma_ref_[k], gamma_ref_[p]);
    perm_.swap(k, p);
  }

  auto x = r_.col(k).subspan(k);
  const double tau = detail::make_reflector(x);
  const auto vtail = x.subspan(1);
  for (std::size_t q = k + 1; q < n; ++q) detail::apply_reflector(vtail, tau, r_.col(q).subspan(k));
  std::fill(vtail.begin(), vtail.end(), 0.0);

  const double delta = r_(k, k);
  if (delta == 0.0) throw SingularityError("srrqr: zero pivot at step " + std::to_string(k), k);

  // R11' = [R11 b; 0 δ] with R11⁻¹b = u, the old A column of the pivot.
  const Vector u(a_.col(k).begin(), a_.col(k).begin() + k);
  for (std::size_t q = k + 1; q < n; ++q) {
    const double c = r_(k, q) / delta;
    auto aq = a_.col(q);
    for (std::size_t i = 0; i < k; ++i) aq[i] -= u[i] * c;
    aq[k] = c;
  }
  for (std::size_t i = 0; i < k; ++i) omega_[i] = std::hypot(omega_[i], u[i] / delta);
  omega_.push_back(1.0 / delta);

  for (std::size_t q = k + 1; q < n; ++q) {
    const double c = r_(k, q);
    const double g2 = gamma_[q] * gamma_[q] - c * c;
    if (g2 < 0.5 * gamma_ref_[q] * gamma_ref_[q]) {
      refresh_gamma(q, k + 1);
    } else {
      gamma_[q] = std::sqrt(g2);
    }
  }
  k_ = k + 1;
  maybe_recompute();
  return delta;
}

void SrrqrState::refresh_gamma(std::size_t p, std::size_t from_row) {
  gamma_[p] = from_row < rows() ? norm2(r_.col(p).subspan(from_row)) : 0.0;
  gamma_ref_[p] = gamma_[p];
}

void SrrqrState::givens_rows(std::size_t top, std::size_t bottom, std::size_t col) {
  const double x = r_(top, col);
  const double y = r_(bottom, col);
  if (y == 0.0) return;
  const double rr = std::hypot(x, y);
  const double c = x / rr;
  const double s = y / rr;
  for (std::size_t l = col; l < cols(); ++l) {
    const double a = r_(top, l);
    const double b = r_(bottom, l);
    r_(top, l) = c * a + s * b;
    r_(bottom, l) = -s * a + c * b;
  }
  r_(top, col) = rr;
  r_(bottom, col) = 0.0;
}

void SrrqrState::fix_row_sign(std::size_t row, std::size_t from_col) {
  if (r_(row, from_col) >= 0.0) return;
  for (std::size_t l = from_col; l < cols(); ++l) r_(row, l) = -r_(row, l);
}

// Leading column i moves to position k-1; the columns in between shift left.
// Row operations Q and the column rotation P give R11' = Q·R11·P, R12' = Q·R12,
// so A' = Pᵀ·A and ω' = Pᵀ·ω.
void SrrqrState::shift_to_end(std::size_t i) {
  const std::size_t k = k_;
  if (i + 1 >= k) return;
  Vector tmp(r_.col(i).begin(), r_.col(i).begin() + k);
  for (std::size_t q = i; q + 1 < k; ++q) std::copy_n(r_.col(q + 1).begin(), k, r_.col(q).begin());
  std::copy(tmp.begin(), tmp.end(), r_.col(k - 1).begin());

  for (std::size_t q = i; q + 1 < k; ++q) givens_rows(q, q + 1, q);
  for (std::size_t q = i; q < k; ++q) fix_row_sign(q, q);

  for (std::size_t p = k; p < cols(); ++p) {
    auto ap = a_.col(p);
    std::rotate(ap.begin() + i, ap.begin() + i + 1, ap.begin() + k);
  }
  std::rotate(omega_.begin() + i, omega_.begin() + i + 1, omega_.begin() + k);
}

// Inverse of shift_to_end: column k-1 moves to position i.
void SrrqrState::shift_from_end(std::size_t i) {
  const std::size_t k = k_;
  if (i + 1 >= k) return;
  Vector tmp(r_.col(k - 1).begin(), r_.col(k - 1).begin() + k);
  for (std::size_t q = k - 1; q > i; --q) std::copy_n(r_.col(q - 1).begin(), k, r_.col(q).begin());
  std::copy(tmp.begin(), tmp.end(), r_.col(i).begin());

  // Only column i sticks out below the diagonal; chase it upward.
  for (std::size_t q = k - 1; q > i; --q) givens_rows(q - 1, q, i);
  for (std::size_t q = i; q < k; ++q) fix_row_sign(q, q);

  for (std::size_t p = k; p < cols(); ++p) {
    auto ap = a_.col(p);
    std::rotate(ap.begin() + i, ap.begin() + k - 1, ap.begin() + k);
  }
  std::rotate(omega_.begin() + i, omega_.begin() + k - 1, omega_.begin() + k);
}

void SrrqrState::interchange(std::size_t i, std::size_t j) {
  if (i >= k_ || j >= trailing()) throw DimensionError("interchange: index out of range");
  const std::size_t n = cols();
  const std::size_t k = k_;
  const std::size_t t = k - 1;
  const std::size_t p = k + j;

  shift_to_end(i);

  // With R11 = [Ab b; 0 β]: u = Ab⁻¹b, y = (row t of R12)/β, and the old
  // X = Ab⁻¹·(top rows of R12) equals A_top + u·yᵀ.
  const double beta = r_(t, t);
  const double gamma_p = gamma_[p];
  Vector u;
  if (t > 0) u = solve_upper(r_.block(0, 0, t, t), r_.col(t).first(t));
  Vector y(n, 0.0);
  for (std::size_t l = k; l < n; ++l) y[l] = r_(t, l) / beta;
  Vector w(t);
  for (std::size_t q = 0; q < t; ++q) w[q] = a_(q, p) + u[q] * y[p];

  r_.swap_columns(t, p);
  auto x = r_.col(t).subspan(t);
  const double tau = detail::make_reflector(x);
  const auto vtail = x.subspan(1);
  for (std::size_t l = k; l < n; ++l) detail::apply_reflector(vtail, tau, r_.col(l).subspan(t));
  std::fill(vtail.begin(), vtail.end(), 0.0);
  const double beta_bar = r_(t, t);

  for (std::size_t l = k; l < n; ++l) {
    const double ybar = r_(t, l) / beta_bar;
    auto al = a_.col(l);
    if (l == p) {
      for (std::size_t q = 0; q < t; ++q) al[q] = u[q] - w[q] * ybar;
    } else {
      for (std::size_t q = 0; q < t; ++q) al[q] += u[q] * y[l] - w[q] * ybar;
    }
    al[t] = ybar;
  }

  bool stale_omega = false;
  for (std::size_t q = 0; q < t; ++q) {
    const double base = omega_[q] * omega_[q] - (u[q] / beta) * (u[q] / beta);
    if (base < 0.5 * omega_[q] * omega_[q]) stale_omega = true;
    omega_[q] = std::sqrt(std::max(base, 0.0) + (w[q] / beta_bar) * (w[q] / beta_bar));
  }
  omega_[t] = 1.0 / beta_bar;
  if (stale_omega) omega_ = inverse_row_norms(r_.block(0, 0, k, k));

  for (std::size_t l = k; l < n; ++l) {
    if (l == p) continue;
    const double before = y[l] * beta;
    const double after = r_(t, l);
    const double g2 = gamma_[l] * gamma_[l] + before * before - after * after;
    if (g2 < 0.5 * gamma_ref_[l] * gamma_ref_[l]) {
      refresh_gamma(l, k);
    } else {
      gamma_[l] = std::sqrt(g2);
    }
  }
  // Volume of the k+1 columns is unchanged: β·γ_p = β̄·γ̄_p.
  gamma_[p] = beta * (gamma_p / beta_bar);
  gamma_ref_[p] = gamma_[p];

  shift_from_end(i);
  perm_.swap(i, p);
  ++swaps_;
  maybe_recompute();
}

void SrrqrState::refresh() {
  const std::size_t k = k_;
  for (std::size_t p = k; p < cols(); ++p) refresh_gamma(p, k);
  if (k == 0) {
    omega_.clear();
    return;
  }
  const Matrix r11 = r_.block(0, 0, k, k);
  omega_ = inverse_row_norms(r11);
  if (k < cols()) {
    const Matrix a = solve_upper(r11, r_.block(0, k, k, cols() - k));
    for (std::size_t p = k; p < cols(); ++p) std::copy_n(a.col(p - k).begin(), k, a_.col(p).begin());
  }
}

void SrrqrState::maybe_recompute() {
  if (recompute_) refresh();
}

double SrrqrState::consistency_error() const {
  SrrqrState fresh = *this;
  fresh.refresh();
  double err = relative_gap(omega_, fresh.omega_);
  err = std::max(err, relative_gap(gamma(), fresh.gamma()));
  const Matrix mine = a();
  const Matrix theirs = fresh.a();
  err = std::max(err, relative_gap(mine.data(), theirs.data()));
  return err;
}

PartialQR SrrqrState::to_partial_qr() const { return PartialQR(r_, k_, perm_); }

}  // namespace spectra
