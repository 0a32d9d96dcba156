#include "spectra/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xffu);
  out.write(bytes.data(), 8);
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), 8)) throw IoError("read_binary: truncated input");
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return v;
}

bool is_binary_path(const std::filesystem::path& path) { return path.extension() == ".bin"; }

}  // namespace

void write_text(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("write_text: stream failure");
}

Matrix read_text(std::istream& in) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(in >> rows >> cols)) throw IoError("read_text: missing dimensions");
  if (rows == 0 || cols == 0) throw IoError("read_text: zero dimension");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::string token;
      if (!(in >> token)) throw IoError("read_text: expected " + std::to_string(rows * cols) + " entries");
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw IoError("read_text: bad entry '" + token + "'");
      m(i, j) = v;
    }
  }
  m.require_finite("read_text");
  return m;
}

void write_binary(std::ostream& out, const Matrix& m) {
  put_u64(out, m.rows());
  put_u64(out, m.cols());
  for (double v : m.data()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  if (!out) throw IoError("write_binary: stream failure");
}

Matrix read_binary(std::istream& in) {
  const std::uint64_t rows = get_u64(in);
  const std::uint64_t cols = get_u64(in);
  if (rows == 0 || cols == 0) throw IoError("read_binary: zero dimension");
  if (rows > (std::uint64_t{1} << 32) || cols > (std::uint64_t{1} << 32)) throw IoError("read_binary: implausible dimensions");
  std::vector<double> data(rows * cols);
  for (double& v : data) v = std::bit_cast<double>(get_u64(in));
  return Matrix::from_col_major(rows, cols, std::move(data));
}

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  const bool binary = is_binary_path(path);
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  try {
    binary ? write_binary(out, m) : write_text(out, m);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

Matrix load_matrix(const std::filesystem::path& path) {
  const bool binary = is_binary_path(path);
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return binary ? read_binary(in) : read_text(in);
  } catch (const std::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace spectra
