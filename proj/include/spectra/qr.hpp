#pragma once

#include <cstddef>
#include <span>

#include "spectra/matrix.hpp"
#include "spectra/permutation.hpp"

namespace spectra {

/// k-step QR factorization M·Π = Q·[R11 R12; 0 R22].
///
/// R is kept assembled as an m x n matrix whose first k columns are upper
/// triangular; R22 is the general trailing block below row k. Q is held
/// implicitly as Householder reflectors (which also give its full m x m
/// completion); `thin_q()` materializes the first k columns on request.
///
/// Diagonal entries of R11 are nonnegative.
class PartialQR {
 public:
  PartialQR() = default;

  /// Without reflectors the factorization carries R and Π only (`has_q()` is false).
  PartialQR(Matrix r, std::size_t k, Permutation perm, Matrix reflectors = {}, Vector tau = {});

  std::size_t rows() const noexcept { return r_.rows(); }
  std::size_t cols() const noexcept { return r_.cols(); }
  std::size_t k() const noexcept { return k_; }

  const Matrix& r() const noexcept { return r_; }
  Matrix r11() const { return r_.block(0, 0, k_, k_); }
  Matrix r12() const { return r_.block(0, k_, k_, cols() - k_); }
  Matrix r22() const { return r_.block(k_, k_, rows() - k_, cols() - k_); }

  /// Top k x n block [R11 R12].
  Matrix r_top() const { return r_.block(0, 0, k_, cols()); }

  const Permutation& perm() const noexcept { return perm_; }

  bool has_q() const noexcept { return !tau_.empty() || k_ == 0; }

  /// Q·x for x with `rows()` rows.
  Matrix apply_q(Matrix x) const;

  /// Qᵀ·x for x with `rows()` rows.
  Matrix apply_qt(Matrix x) const;

  /// First k columns of Q (m x k).
  Matrix thin_q() const;

  /// Full orthogonal completion (m x m).
  Matrix full_q() const;

  /// Q·R, which equals M·Π up to rounding.
  Matrix reconstruct() const { return apply_q(r_); }

 private:
  Matrix r_;
  std::size_t k_ = 0;
  Permutation perm_;
  Matrix reflectors_;  // column j holds the reflector tail below row j; v(j) = 1 is implicit
  Vector tau_;
};

/// Householder QR of the first k columns, no pivoting (Π = identity).
/// Throws DomainError when k is outside [1, min(rows, cols)] or the input is not finite.
PartialQR partial_qr(const Matrix& m, std::size_t k);

/// Unpivoted Householder QR of M·Π, carrying Π in the result. k = 0 is allowed
/// here and yields R = M·Π with Q = I.
PartialQR partial_qr(const Matrix& m, std::size_t k, Permutation perm);

/// Column-pivoted (greedy max-norm) Householder QR truncated after k steps.
/// Trailing column norms are downdated and recomputed exactly whenever a
/// squared norm falls below half of its last exact value. Columns whose norm
/// is within a relative 1e-13 of the maximum count as ties; the smallest
/// index wins.
PartialQR column_pivoted_qr(const Matrix& m, std::size_t k);

/// Upper-triangular (min(m,n) x n) R factor of the column-pivoted QR, without
/// storing reflectors. Used to precondition the singular value solver.
Matrix pivoted_r_factor(const Matrix& m);

namespace detail {

/// Relative tolerance under which two trailing column norms count as equal
/// when choosing a pivot.
inline constexpr double kPivotTieTolerance = 1e-13;

/// Overwrites x with (beta, v_2, ..., v_n) such that (I - tau v vᵀ) x = beta e_1
/// with beta >= 0 and v_1 = 1. Returns tau (0 means the reflector is the identity).
double make_reflector(std::span<double> x) noexcept;

/// y := (I - tau v vᵀ) y where v = (1, vtail).
void apply_reflector(std::span<const double> vtail, double tau, std::span<double> y) noexcept;

/// Smallest index whose value is within kPivotTieTolerance (relative) of the maximum.
std::size_t pick_pivot(std::span<const double> norms) noexcept;

}  // namespace detail

}  // namespace spectra
