#pragma once

#include "spectra/matrix.hpp"

namespace spectra {

/// Singular values in descending order, min(rows, cols) of them.
///
/// The matrix is first reduced by column-pivoted QR; one-sided Jacobi is then
/// run on the columns of Rᵀ. Pivoting leaves R row-graded, so the Jacobi step
/// sees a column-scaled operand and keeps small singular values accurate
/// relative to their own size rather than to the largest one.
Vector singular_values(const Matrix& m);

}  // namespace spectra
