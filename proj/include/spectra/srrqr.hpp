#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>

#include "spectra/matrix.hpp"
#include "spectra/permutation.hpp"
#include "spectra/qr.hpp"

namespace spectra {

/// Stop after exactly k columns have been selected.
struct TargetRank {
  std::size_t k = 0;
};

/// Keep selecting while some trailing column norm is at least tau.
struct Tolerance {
  double tau = 0.0;
};

struct SrrqrConfig {
  double f = 2.0;
  std::variant<TargetRank, Tolerance> mode = TargetRank{1};
  /// Recompute ω, γ and R11⁻¹R12 from R after every change instead of updating them.
  bool recompute_maintained = false;

  /// Throws DomainError unless f > 1 and the mode parameter is in range.
  void validate() const;
};

/// Working state of the strong RRQR iteration on an m x n matrix.
///
/// R is kept assembled (m x n): columns [0, k) are upper triangular, rows
/// [k, m) of columns [k, n) form R22. Alongside R the state maintains
///   ω_i = ‖row i of R11⁻¹‖,  γ_j = ‖column j of R22‖,  A = R11⁻¹R12.
/// Indices are zero-based; `j` always counts trailing columns, so the global
/// column position is k + j.
class SrrqrState {
 public:
  SrrqrState() = default;

  /// k = 0 state: R = M, nothing selected yet.
  explicit SrrqrState(const Matrix& m, bool recompute_maintained = false);

  /// State after an unpivoted k-step QR of M (column order kept).
  static SrrqrState from_partial(const Matrix& m, std::size_t k, bool recompute_maintained = false);

  std::size_t rows() const noexcept { return r_.rows(); }
  std::size_t cols() const noexcept { return r_.cols(); }
  std::size_t k() const noexcept { return k_; }
  std::size_t trailing() const noexcept { return cols() - k_; }
  std::size_t swap_count() const noexcept { return swaps_; }

  const Matrix& r() const noexcept { return r_; }
  Matrix r11() const { return r_.block(0, 0, k_, k_); }
  Matrix r12() const { return r_.block(0, k_, k_, cols() - k_); }
  Matrix r22() const { return r_.block(k_, k_, rows() - k_, cols() - k_); }
  const Permutation& perm() const noexcept { return perm_; }

  /// ω_*(R11), length k.
  const Vector& omega() const noexcept { return omega_; }
  /// γ_*(R22), length n - k.
  Vector gamma() const;
  /// R11⁻¹R12 (k x (n-k)).
  Matrix a() const;

  double a_entry(std::size_t i, std::size_t j) const noexcept { return a_(i, k_ + j); }
  double gamma_entry(std::size_t j) const noexcept { return gamma_[k_ + j]; }

  /// Largest trailing column norm (0 when k = min(m, n) or k = n).
  double max_gamma() const noexcept;

  /// sqrt(a_ij² + ω_i²γ_j²) = |det R̄11| / |det R11| after swapping
  /// leading column i with trailing column j.
  double det_ratio(std::size_t i, std::size_t j) const;

  /// max over (i, j) of det_ratio; 0 when k = 0 or k = n.
  double rho() const noexcept;

  /// max(max |a_ij|, max ω_iγ_j); satisfies rho_hat ≤ rho ≤ √2·rho_hat.
  double rho_hat() const noexcept;

  /// First (i, j) in row-major order whose det_ratio exceeds `threshold`.
  std::optional<std::pair<std::size_t, std::size_t>> find_interchange(double threshold) const noexcept;

  /// Σ log R(i, i) over the leading block.
  double log_abs_det_r11() const;

  /// One outer step: moves the trailing column of largest norm (smallest index
  /// on ties) to position k, triangularizes it, and increments k. Returns the
  /// selected column norm. Throws DomainError when no trailing column is left.
  double advance();

  /// Replaces R by the k-step factor of R·Π_{i,k+j} (a pure transposition of
  /// positions i and k + j) and updates ω, γ, A. Increments swap_count.
  void interchange(std::size_t i, std::size_t j);

  /// Recomputes ω, γ and A from R.
  void refresh();

  /// Largest normwise relative difference between the maintained ω, γ, A and
  /// a fresh recomputation from R.
  double consistency_error() const;

  /// R and Π as a factorization record (no Q).
  PartialQR to_partial_qr() const;

 private:
  double step(std::size_t p);
  void givens_rows(std::size_t top, std::size_t bottom, std::size_t col);
  void fix_row_sign(std::size_t row, std::size_t from_col);
  void shift_to_end(std::size_t i);
  void shift_from_end(std::size_t i);
  void refresh_gamma(std::size_t p, std::size_t from_row);
  void maybe_recompute();

  Matrix r_;
  Permutation perm_;
  std::size_t k_ = 0;
  std::size_t swaps_ = 0;
  Vector omega_;
  Vector gamma_;      // indexed by global column position, valid for p >= k
  Vector gamma_ref_;  // last exactly computed value of gamma_[p]
  Matrix a_;          // n x n buffer; a_(i, p) for i < k <= p
  bool recompute_ = false;
};

struct SrrqrResult {
  PartialQR factorization;
  std::size_t k = 0;
  double rho = 0.0;
  std::size_t swap_count = 0;
};

/// Free-function forms of the state queries.
double det_ratio(const SrrqrState& s, std::size_t i, std::size_t j);
double rho(const SrrqrState& s);
double rho_hat(const SrrqrState& s);

/// Copying form of SrrqrState::interchange.
SrrqrState interchange(SrrqrState s, std::size_t i, std::size_t j);

/// Hard cap on interchanges: ceil(10·k·ln(n)/ln(f)).
std::size_t swap_cap(std::size_t k, std::size_t n, double f);

/// Runs the progressive strong RRQR iteration and returns the final state.
/// Every outer step pivots in the largest trailing column, then interchanges
/// are performed while some det_ratio exceeds f, so the result has rho ≤ f.
///
/// Throws SingularityError (index = step) in TargetRank mode when the largest
/// trailing norm drops below 1e-300 before k columns are selected, and
/// ConvergenceError when the swap cap is exceeded.
SrrqrState srrqr_select(const Matrix& m, const SrrqrConfig& config);

/// srrqr_select followed by an unpivoted Householder QR of M·Π, so that the
/// returned factorization carries Q.
SrrqrResult srrqr(const Matrix& m, const SrrqrConfig& config);

/// Classical column-pivoted QR truncated after k steps.
PartialQR qrcp(const Matrix& m, std::size_t k);

}  // namespace spectra
