#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spectra/errors.hpp"
#include "spectra/geometry.hpp"
#include "spectra/matrix_io.hpp"
#include "spectra/qr.hpp"
#include "spectra/random.hpp"
#include "spectra/svd.hpp"

using namespace spectra;

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector e(n, 0.0);
  e[i] = 1.0;
  return e;
}

}  // namespace

TEST(Matrix, ShapeChecks) {
  const Matrix a(2, 3);
  const Matrix b(2, 3);
  EXPECT_THROW(a * b, DimensionError);
  EXPECT_THROW(hcat(a, Matrix(3, 1)), DimensionError);
  EXPECT_THROW(pad_rows(a, 1), DimensionError);
  Matrix c = Matrix::from_rows({{1, 2}, {3, 4}});
  c(0, 0) = std::nan("");
  EXPECT_THROW(c.require_finite("c"), DomainError);
}

TEST(Matrix, TransposeTimesMatchesProduct) {
  Rng rng(3);
  const Matrix a = gaussian_matrix(7, 4, rng);
  const Matrix b = gaussian_matrix(7, 3, rng);
  const Matrix want = a.transposed() * b;
  const Matrix got = transpose_times(a, b);
  EXPECT_LE((got - want).max_abs(), 1e-14);
}

TEST(Permutation, ReplayAndInverse) {
  Permutation p(5);
  p.swap(0, 3);
  p.rotate_left(1, 4);
  EXPECT_TRUE(p.is_bijection());
  const Permutation q = Permutation::replay(5, p.transpositions());
  EXPECT_EQ(p, q);
  const auto inv = p.inverse();
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(inv[p[i]], i);
  EXPECT_THROW(Permutation::from_forward({0, 0, 1}), DomainError);
}

TEST(PartialQr, PythagoreanColumn) {
  const PartialQR qr = partial_qr(Matrix::from_rows({{3}, {4}}), 1);
  EXPECT_NEAR(qr.r11()(0, 0), 5.0, 1e-15);
}

TEST(PartialQr, IdentityBlocks) {
  const PartialQR qr = partial_qr(Matrix::identity(3), 2);
  EXPECT_EQ(qr.r11(), Matrix::identity(2));
  EXPECT_EQ(qr.r12().max_abs(), 0.0);
  EXPECT_NEAR(qr.r22()(0, 0), 1.0, 1e-15);
  EXPECT_TRUE(qr.perm().is_identity());
}

TEST(PartialQr, GramSchmidtOracle) {
  Rng rng(11);
  const Matrix m = gaussian_matrix(8, 5, rng);
  const PartialQR qr = partial_qr(m, 3);
  EXPECT_LE((qr.reconstruct() - m).frobenius_norm(), 1e-12 * m.frobenius_norm());

  Eigen::MatrixXd gq, gr;
  oracle::gram_schmidt(oracle::to_eigen(m).leftCols(3), gq, gr);
  const Matrix r11 = qr.r11();
  const Matrix q = qr.thin_q();
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i <= j; ++i) EXPECT_NEAR(r11(i, j), gr(i, j), 1e-12);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(q(i, j), gq(i, j), 1e-12);
  }
}

TEST(PartialQr, FullQIsOrthogonal) {
  Rng rng(12);
  const Matrix m = gaussian_matrix(9, 4, rng);
  const Matrix q = partial_qr(m, 4).full_q();
  EXPECT_LE((transpose_times(q, q) - Matrix::identity(9)).max_abs(), 1e-14);
}

TEST(PartialQr, RejectsBadK) {
  EXPECT_THROW(partial_qr(Matrix(3, 2), 3), DomainError);
}

TEST(Qrcp, DiagonalOrder) {
  const Vector d{1, 2, 3};
  const PartialQR qr = column_pivoted_qr(Matrix::diagonal(d), 3);
  EXPECT_EQ(qr.perm().forward(), (std::vector<std::size_t>{2, 1, 0}));
  const Vector want{3, 2, 1};
  const Matrix r = qr.r();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(r(i, j), i == j ? want[i] : 0.0, 1e-15);
}

TEST(Qrcp, MonotoneDiagonal) {
  Rng rng(5);
  const Matrix m = gaussian_matrix(8, 5, rng);
  const PartialQR qr = column_pivoted_qr(m, 5);
  for (std::size_t i = 0; i + 1 < 5; ++i) EXPECT_GE(qr.r()(i, i), qr.r()(i + 1, i + 1));
  EXPECT_LE((qr.reconstruct() - qr.perm().apply(m)).frobenius_norm(), 1e-12 * m.frobenius_norm());
}

TEST(SingularValues, Diagonal) {
  const Vector d{3, 2, 1};
  const Vector s = singular_values(Matrix::diagonal(d));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s[i], d[i], 1e-15);
}

TEST(SingularValues, OrthogonalMatrix) {
  Rng rng(1);
  const Matrix q = partial_qr(gaussian_matrix(6, 6, rng), 6).full_q();
  for (double s : singular_values(q)) EXPECT_NEAR(s, 1.0, 1e-14);
}

TEST(SingularValues, GramEigenOracle) {
  Rng rng(2);
  const Matrix m = gaussian_matrix(6, 4, rng);
  EXPECT_LE(oracle::max_rel_diff(singular_values(m), oracle::gram_singular_values(m)), 1e-9);
}

TEST(ColumnNorms, Cases) {
  const Vector e = column_norms(Matrix::identity(3));
  for (double x : e) EXPECT_EQ(x, 1.0);
  const Vector g = column_norms(Matrix::from_rows({{3, 0}, {4, 0}}));
  EXPECT_NEAR(g[0], 5.0, 1e-15);
  EXPECT_EQ(g[1], 0.0);

  Rng rng(4);
  const Matrix m = gaussian_matrix(5, 3, rng);
  const Vector got = column_norms(m);
  for (std::size_t j = 0; j < 3; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 5; ++i) s += m(i, j) * m(i, j);
    EXPECT_NEAR(got[j], std::sqrt(s), 1e-14);
  }
}

TEST(InverseRowNorms, Cases) {
  const Vector d{2, 4};
  const Vector w = inverse_row_norms(Matrix::diagonal(d));
  EXPECT_DOUBLE_EQ(w[0], 0.5);
  EXPECT_DOUBLE_EQ(w[1], 0.25);
  for (double x : inverse_row_norms(Matrix::identity(4))) EXPECT_EQ(x, 1.0);

  Rng rng(9);
  Matrix r(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < j; ++i) r(i, j) = 0.5 * rng.normal();
    r(j, j) = 2.0 + rng.uniform();
  }
  const Eigen::MatrixXd inv = oracle::to_eigen(r).inverse();
  const Vector got = inverse_row_norms(r);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], inv.row(i).norm(), 1e-12);

  r(2, 2) = 0.0;
  try {
    inverse_row_norms(r);
    FAIL() << "expected SingularityError";
  } catch (const SingularityError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Volume, Cases) {
  EXPECT_NEAR(volume(Matrix::from_rows({{1, 2}, {3, 4}})), 2.0, 1e-14);
  Rng rng(6);
  const Matrix q = partial_qr(gaussian_matrix(7, 3, rng), 3).thin_q();
  EXPECT_NEAR(volume(q), 1.0, 1e-14);
  const Matrix m = gaussian_matrix(6, 3, rng);
  EXPECT_NEAR(volume(m) / oracle::gram_volume(m), 1.0, 1e-10);
  EXPECT_EQ(log_volume(Matrix(3, 2)), -std::numeric_limits<double>::infinity());
}

TEST(LsResidual, Cases) {
  EXPECT_NEAR(ls_residual(Matrix::column(unit(3, 0)), unit(3, 1)), 1.0, 1e-15);

  Rng rng(7);
  const Matrix a = gaussian_matrix(7, 3, rng);
  const Vector x = gaussian_vector(3, rng);
  EXPECT_LE(ls_residual(a, a * std::span<const double>(x)), 1e-12);

  const Vector b = gaussian_vector(7, rng);
  EXPECT_NEAR(ls_residual(a, b), oracle::normal_equations_residual(a, b), 1e-9);
  EXPECT_THROW(ls_residual(a, Vector(6)), DimensionError);
}

TEST(LsResidual, RankDeficient) {
  Matrix a(4, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  EXPECT_NEAR(ls_residual(a, Vector{1, 1, 0, 0}), 1.0, 1e-14);
}

TEST(CosAngle, Cases) {
  EXPECT_DOUBLE_EQ(cos_angle(unit(3, 0), unit(3, 0)), 1.0);
  EXPECT_DOUBLE_EQ(cos_angle_subspace(unit(3, 1), Matrix::column(unit(3, 0))), 0.0);
  EXPECT_THROW(cos_angle(Vector(3, 0.0), unit(3, 0)), DomainError);

  Rng rng(8);
  const Matrix basis = gaussian_matrix(9, 3, rng);
  const Vector v = gaussian_vector(9, rng);
  const Eigen::MatrixXd b = oracle::to_eigen(basis);
  const Eigen::MatrixXd proj = b * (b.transpose() * b).inverse() * b.transpose();
  const Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(v.data(), 9);
  EXPECT_NEAR(cos_angle_subspace(v, basis), (proj * ev).norm() / ev.norm(), 1e-12);
}

TEST(MatrixIo, TextRoundTripIsExact) {
  Rng rng(10);
  const Matrix m = gaussian_matrix(5, 4, rng);
  std::stringstream s;
  write_text(s, m);
  EXPECT_EQ(read_text(s), m);
}

TEST(MatrixIo, BinaryRoundTripIsExact) {
  Rng rng(10);
  const Matrix m = gaussian_matrix(3, 6, rng);
  const auto path = std::filesystem::temp_directory_path() / "spectra_io_test.bin";
  save_matrix(path, m);
  EXPECT_EQ(load_matrix(path), m);
  std::filesystem::remove(path);
  EXPECT_THROW(load_matrix(path), IoError);
}

TEST(MatrixIo, TruncatedTextFails) {
  std::stringstream s("2 2\n1 2 3\n");
  EXPECT_THROW(read_text(s), IoError);
}
