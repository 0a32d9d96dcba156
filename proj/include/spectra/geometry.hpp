#pragma once

#include <span>

#include "spectra/matrix.hpp"

namespace spectra {

/// γ_*: Euclidean norm of every column.
Vector column_norms(const Matrix& m);

/// ω_*: Euclidean norm of every row of r11⁻¹ for square upper-triangular r11.
/// Row i is obtained from the triangular solve r11ᵀ z = e_i; the inverse is
/// never formed. Throws SingularityError carrying the index of a zero diagonal.
Vector inverse_row_norms(const Matrix& r11);

/// Solves r·x = b for square upper-triangular r (back substitution).
Vector solve_upper(const Matrix& r, std::span<const double> b);

/// Solves rᵀ·x = b for square upper-triangular r (forward substitution).
Vector solve_upper_transposed(const Matrix& r, std::span<const double> b);

/// r⁻¹·b for every column of b.
Matrix solve_upper(const Matrix& r, const Matrix& b);

/// V(M) = sqrt(det(MᵀM)) = product of the absolute diagonal of the thin R
/// factor. Requires cols <= rows.
double volume(const Matrix& m);

/// log V(M); -infinity for rank-deficient input. Avoids under/overflow of the product.
double log_volume(const Matrix& m);

/// min_x ‖a·x - b‖₂. Rank deficiency is handled with column-pivoted QR: diagonal
/// entries below 1e-14·‖a‖_F end the numerically nonsingular leading block.
double ls_residual(const Matrix& a, std::span<const double> b);

/// Least-squares solution with the same rank handling as ls_residual
/// (components outside the leading nonsingular block are zero).
Vector ls_solve(const Matrix& a, std::span<const double> b);

/// Cosine of the angle between two nonzero vectors, in [-1, 1].
double cos_angle(std::span<const double> v1, std::span<const double> v2);

/// Cosine of the angle between nonzero v and range(basis): ‖P v‖ / ‖v‖, in [0, 1].
/// basis must have full column rank.
double cos_angle_subspace(std::span<const double> v, const Matrix& basis);

/// Orthonormal basis (thin Q) of range(m) for full-column-rank m.
Matrix orthonormal_basis(const Matrix& m);

}  // namespace spectra
