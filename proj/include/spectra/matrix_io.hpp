#pragma once

#include <filesystem>
#include <iosfwd>

#include "spectra/matrix.hpp"

namespace spectra {

/// Text format: "rows cols" on the first line, then the entries row by row,
/// whitespace separated, printed with 17 significant digits.
void write_text(std::ostream& out, const Matrix& m);
Matrix read_text(std::istream& in);

/// Binary format: little-endian u64 rows, u64 cols, then column-major f64 entries.
void write_binary(std::ostream& out, const Matrix& m);
Matrix read_binary(std::istream& in);

/// File variants pick the format from the extension: ".bin" is binary, anything
/// else text. Failures throw IoError naming the path.
void save_matrix(const std::filesystem::path& path, const Matrix& m);
Matrix load_matrix(const std::filesystem::path& path);

}  // namespace spectra
