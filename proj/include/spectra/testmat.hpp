#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "spectra/matrix.hpp"
#include "spectra/random.hpp"

namespace spectra {

/// Upper-triangular diag(1, s, ..., s^{n-1})·T, T unit upper triangular with −c
/// above the diagonal, c = √(1−s²); zero-padded below to `pad_to_m` rows.
struct KahanSpec {
  std::size_t n = 1;
  double s = 0.99;
  std::size_t pad_to_m = 0;  // 0: no padding
};

/// U·diag(σ)·Vᵀ with σ_i = q^⌊i/stair_len⌋ (i zero-based), U, V Haar.
struct DevilsStairsSpec {
  std::size_t m = 1;
  std::size_t n = 1;
  double q = 1e-3;
  std::size_t stair_len = 100;
};

/// U·diag(1, q, ..., q^{⌊n/2⌋}, 0, ..., 0)·Vᵀ + c·rand(m, n), c = q^{n/2},
/// rand entries uniform on [0, 1).
struct StewartSpec {
  std::size_t m = 1;
  std::size_t n = 1;
  double q = 0.8;
};

/// U·diag(100, 10, logspace(1e-2, 1e-14, n−2)), U Haar with n columns.
struct HcSpec {
  std::size_t m = 2;
  std::size_t n = 2;
};

/// n distinct columns of I_m, chosen uniformly.
struct SampledIdentitySpec {
  std::size_t m = 1;
  std::size_t n = 1;
};

/// Standard Gaussian entries.
struct GaussianSpec {
  std::size_t m = 1;
  std::size_t n = 1;
};

/// diag(values) padded below to `pad_to_m` rows.
struct DiagonalSpec {
  Vector values;
  std::size_t pad_to_m = 0;
};

using MatrixKind = std::variant<KahanSpec, DevilsStairsSpec, StewartSpec, HcSpec, SampledIdentitySpec, GaussianSpec,
                                DiagonalSpec>;

struct MatrixSpec {
  MatrixKind kind;
  std::uint64_t seed = 0;

  std::size_t rows() const;
  std::size_t cols() const;
  /// Throws DomainError on invalid parameters (m < n, s or q outside (0, 1), ...).
  void validate() const;
};

/// Deterministic: the same spec and seed give a bit-identical matrix.
Matrix generate(const MatrixSpec& spec);

/// Singular values the generator prescribes, descending, min(m, n) of them.
/// Stewart returns the spectrum before the random perturbation. Kahan and
/// Gaussian have no closed form and throw DomainError.
Vector prescribed_singular_values(const MatrixSpec& spec);

/// m x n matrix with Haar-distributed orthonormal columns: Q of the QR of a
/// Gaussian matrix with R's diagonal made positive.
Matrix haar_orthonormal(std::size_t m, std::size_t n, Rng& rng);

/// Compact text form, e.g. "kahan:128x32,s=0.99", "stairs:8192x500,q=1e-3,L=100",
/// "stewart:256x100,q=0.8", "hc:8192x500", "sampled-identity:8192x100",
/// "gaussian:64x12", "diag:1/2/3,pad=8", "diag:1..10", "identity:16"
/// (a diagonal of ones). The seed is passed
/// separately. For Kahan the first dimension is the padded row count.
MatrixSpec parse_matrix_spec(std::string_view text, std::uint64_t seed = 0);
std::string format_matrix_spec(const MatrixSpec& spec);

/// JSON form: {"kind": ..., parameters..., "seed": ...}.
std::string to_json(const MatrixSpec& spec);
MatrixSpec matrix_spec_from_json(std::string_view text);

}  // namespace spectra
