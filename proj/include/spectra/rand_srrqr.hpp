#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spectra/matrix.hpp"
#include "spectra/qr.hpp"
#include "spectra/sketch.hpp"
#include "spectra/srrqr.hpp"

namespace spectra {

/// Which subspace the default sketch size is meant to embed.
enum class SizingPolicy {
  /// range(M): d = ose_dim(n, m).
  RangeEmbedding,
  /// Any (k+1)-dimensional subspace: d = ose_dim(k + 1, m). Tolerance mode has no
  /// k up front and falls back to RangeEmbedding.
  OseKPlus1,
};

enum class DistortionSource {
  /// ε̂ measured against an orthonormal basis of range(M).
  Measured,
  /// range(M) too wide to measure; the configured target ε is reported instead.
  Nominal,
};

struct RandSrrqrOptions {
  double f = 2.0;
  SketchKind kind = SketchKind::Srht;
  /// Sketch rows; derived from `sizing` when unset.
  std::optional<std::size_t> d;
  std::uint64_t seed = 0;
  double target_epsilon = 0.25;
  SizingPolicy sizing = SizingPolicy::RangeEmbedding;
  /// ε̂ is measured only when M has at most this many columns.
  std::size_t measure_limit = 64;
};

struct RandSrrqrTimings {
  double sketch_ms = 0.0;
  double select_ms = 0.0;
  double qr_ms = 0.0;
  double total_ms = 0.0;
};

struct RandSrrqrResult {
  /// Unpivoted Householder QR of M·Π; Π comes from the sketch only.
  PartialQR factorization;
  std::size_t k = 0;
  /// Deterministic SRRQR of the sketch (R and Π, no Q).
  SrrqrResult sketch_result;
  /// M^sk = Ω·M (with M zero-padded for SRHT).
  Matrix sketch;
  SketchOperator op;
  double f = 2.0;
  /// √((1+ε̂)/(1−ε̂))·f; +infinity when ε̂ ≥ 1.
  double f_tilde = 0.0;
  double distortion = 0.0;
  DistortionSource distortion_source = DistortionSource::Nominal;
  std::uint64_t seed = 0;
  RandSrrqrTimings timings;
};

/// f̃(ε) = √((1+ε)/(1−ε))·f, +infinity for ε ≥ 1.
double inflated_f(double f, double epsilon);

/// Sketch size the options resolve to for an m x n input and (optional) rank k.
std::size_t resolve_sketch_size(const RandSrrqrOptions& opt, std::size_t m, std::size_t n,
                                std::optional<std::size_t> k);

/// Randomized strong RRQR for a given rank k: sketch, run deterministic SRRQR
/// on the sketch, apply its permutation to M, then factor M·Π without pivoting.
/// Throws DomainError when d < k or d exceeds the (padded) row count, and
/// SingularityError when the sketch loses rank before step k.
RandSrrqrResult rand_srrqr_rank(const Matrix& m, std::size_t k, const RandSrrqrOptions& opt);

/// Randomized strong RRQR for a tolerance τ; the rank is decided on the sketch.
/// Throws DomainError for τ ≤ 1e-300·‖M‖_F.
RandSrrqrResult rand_srrqr_tol(const Matrix& m, double tau, const RandSrrqrOptions& opt);

struct RatioReport {
  std::size_t k = 0;
  std::size_t n = 0;
  /// σ_i(M)/σ_i(R11), i < k.
  Vector leading_ratios;
  /// σ_j(R22)/σ_{j+k}(M), j < min(m, n) − k. Empty where σ_{j+k}(M) ≤ 1e-13·σ_1(M).
  std::vector<std::optional<double>> trailing_ratios;
  /// max |R11⁻¹R12| (0 when R12 is empty).
  double a_max = 0.0;
  /// The f the bound was built from (f̃ for randomized runs).
  double f_bound = 0.0;
  /// √(1 + f_bound²·k·(n−k)).
  double bound = 0.0;
};

/// Singular value bound √(1 + f²k(n−k)).
double ratio_bound(double f, std::size_t k, std::size_t n);

/// Ratio report of a k-step factorization of M against σ(M), using `f_bound` for the bound.
RatioReport ratio_report(std::span<const double> sigma_m, const PartialQR& fact, double f_bound);
RatioReport ratio_report(const Matrix& m, const PartialQR& fact, double f_bound);

/// Report for a randomized run; the bound uses f̃.
RatioReport ratio_report(const Matrix& m, const RandSrrqrResult& res);
RatioReport ratio_report(std::span<const double> sigma_m, const RandSrrqrResult& res);

struct QlpResult {
  /// |diag L| where [R11 R12]ᵀ = P·Lᵀ, in factorization order.
  Vector l_values;
  /// l_values sorted descending.
  Vector l_values_sorted;
  /// |diag R11|.
  Vector r_values;
};

/// Throws DomainError when k = 0.
QlpResult qlp_values(const PartialQR& fact);
QlpResult qlp_values(const RandSrrqrResult& res);

}  // namespace spectra
