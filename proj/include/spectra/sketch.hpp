#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/matrix.hpp"

namespace spectra {

/// In-place unnormalized Walsh–Hadamard transform; applying it twice multiplies
/// by the length. Throws DomainError unless the length is a power of two.
void fwht_inplace(std::span<double> v);
Vector fwht(std::span<const double> v);

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

enum class SketchKind {
  Gaussian,
  Srht,
  /// Ω = I (d = m). Degenerate stub for tests and for the no-sketch baseline.
  Identity,
};

std::string to_string(SketchKind kind);
/// Accepts "gaussian", "srht", "identity". Throws DomainError otherwise.
SketchKind parse_sketch_kind(std::string_view name);

/// Random d x m map Ω.
///
/// Gaussian: Ω(r, i) = z(seed, r, i) / √d with z standard normal, derived per
/// entry from a counter so the matrix is never stored.
/// SRHT: Ω = √(m/d)·P·H·D with H the orthonormal Hadamard matrix, D a diagonal
/// of Rademacher signs and P a sampling of d rows with replacement. Requires
/// m to be a power of two; callers pad.
///
/// Operators are immutable and `apply` is reentrant.
class SketchOperator {
 public:
  SketchOperator() = default;

  static SketchOperator gaussian(std::size_t d, std::size_t m, std::uint64_t seed);
  static SketchOperator srht(std::size_t d, std::size_t m, std::uint64_t seed);
  static SketchOperator identity(std::size_t m);
  static SketchOperator make(SketchKind kind, std::size_t d, std::size_t m, std::uint64_t seed);

  SketchKind kind() const noexcept { return kind_; }
  std::size_t d() const noexcept { return d_; }
  std::size_t m() const noexcept { return m_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// SRHT sign flips (length m) and sampled row indices (length d); empty otherwise.
  const std::vector<double>& signs() const noexcept { return signs_; }
  const std::vector<std::size_t>& samples() const noexcept { return samples_; }

  /// Entry Ω(r, i) of a Gaussian operator.
  double gaussian_entry(std::size_t r, std::size_t i) const noexcept;

  /// Ω·x for a matrix with m rows (result d x cols). Throws DimensionError on mismatch.
  Matrix apply(const Matrix& x) const;
  Vector apply(std::span<const double> x) const;

  /// Ω as a dense d x m matrix. Intended for small operators and tests.
  Matrix dense() const;

  /// {"kind", "d", "m", "seed"}; signs and samples are re-derived from the seed.
  std::string to_json() const;
  static SketchOperator from_json(std::string_view text);

  friend bool operator==(const SketchOperator& a, const SketchOperator& b) noexcept {
    return a.kind_ == b.kind_ && a.d_ == b.d_ && a.m_ == b.m_ && a.seed_ == b.seed_;
  }

 private:
  Matrix apply_gaussian(const Matrix& x) const;
  Matrix apply_srht(const Matrix& x) const;

  SketchKind kind_ = SketchKind::Identity;
  std::size_t d_ = 0;
  std::size_t m_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> signs_;
  std::vector<std::size_t> samples_;
};

/// Row count an input must have before sketching with `kind`: SRHT pads to the
/// next power of two, the others keep m.
std::size_t sketch_input_rows(SketchKind kind, std::size_t m) noexcept;

/// ε̂ = max(1 − σ_min²(Ω·B), σ_max²(Ω·B) − 1) for B with orthonormal columns,
/// the smallest ε for which Ω is an ε-embedding of range(B). Returns 1 when
/// d < B.cols. Throws DomainError when BᵀB differs from I by more than 1e-10.
double embedding_distortion(const SketchOperator& op, const Matrix& basis);

/// Same estimate from an already sketched orthonormal basis Ω·B.
double embedding_distortion_of_sketch(const Matrix& sketched_basis);

enum class OsePolicy {
  /// ⌊3n·ln(m)/ln(n)⌋.
  Experimental,
  /// Gaussian: C·ε⁻²·(n + ln(1/δ)); SRHT: C·ε⁻²·(n + ln(m/δ))·ln(n/δ).
  Theoretical,
};

struct SketchConfig {
  double epsilon = 0.25;
  double delta = 0.01;
  std::size_t subspace_dim = 1;
  std::size_t m = 1;
  SketchKind kind = SketchKind::Srht;
  OsePolicy policy = OsePolicy::Experimental;
  /// Multiplies the theoretical formulas; unused by the experimental rule.
  double constant = 1.0;

  void validate() const;
};

/// Sketch size for an oblivious subspace embedding of `subspace_dim`
/// dimensions, clamped to [subspace_dim + 1, m] (or m when subspace_dim ≥ m).
std::size_t ose_dim(const SketchConfig& cfg);

/// Experimental rule only.
std::size_t ose_dim(std::size_t subspace_dim, std::size_t m);

}  // namespace spectra
