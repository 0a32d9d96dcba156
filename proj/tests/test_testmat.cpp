#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spectra/errors.hpp"
#include "spectra/geometry.hpp"
#include "spectra/qr.hpp"
#include "spectra/svd.hpp"
#include "spectra/testmat.hpp"

using namespace spectra;

namespace {

// Relative agreement above `floor`·σ₁, absolute agreement below it.
void expect_spectrum(const Vector& got, const Vector& want, double rel, double floor) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (want[i] >= floor * want[0]) EXPECT_NEAR(got[i] / want[i], 1.0, rel) << "index " << i;
    else EXPECT_NEAR(got[i], want[i], floor * want[0]) << "index " << i;
  }
}

}  // namespace

TEST(Kahan, SmallCase) {
  const Matrix k = generate({KahanSpec{3, 0.6, 0}, 0});
  const Matrix want = Matrix::from_rows({{1, -0.8, -0.8}, {0, 0.6, -0.48}, {0, 0, 0.36}});
  EXPECT_LE((k - want).max_abs(), 1e-15);
}

TEST(Kahan, PaddingAndQrcpKeepsOrder) {
  const Matrix k = generate({KahanSpec{32, 0.99, 128}, 0});
  EXPECT_EQ(k.rows(), 128u);
  EXPECT_EQ(k.block(32, 0, 96, 32).max_abs(), 0.0);
  const PartialQR qr = column_pivoted_qr(k, 32);
  EXPECT_TRUE(qr.perm().is_identity());
  EXPECT_LE((qr.r().block(0, 0, 32, 32) - k.block(0, 0, 32, 32)).max_abs(), 1e-13);
}

TEST(Kahan, InvalidParameters) {
  EXPECT_THROW(generate({KahanSpec{4, 1.0, 0}, 0}), DomainError);
  EXPECT_THROW(generate({KahanSpec{4, 0.5, 3}, 0}), DomainError);
}

TEST(DevilsStairs, TwoStairs) {
  const MatrixSpec spec{DevilsStairsSpec{256, 200, 1e-3, 100}, 4};
  Vector want(200, 1.0);
  std::fill(want.begin() + 100, want.end(), 1e-3);
  EXPECT_EQ(prescribed_singular_values(spec), want);
  EXPECT_LE(oracle::max_rel_diff(singular_values(generate(spec)), want), 1e-8);
}

TEST(DevilsStairs, FullSizeRankStructure) {
  const Vector s = prescribed_singular_values({DevilsStairsSpec{8192, 500, 1e-3, 100}, 0});
  EXPECT_EQ(std::count_if(s.begin(), s.end(), [](double x) { return x > 1e-10; }), 400);
}

TEST(SampledIdentity, UnitVolume) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix m = generate({SampledIdentitySpec{64, 20}, seed});
    EXPECT_EQ(volume(m), 1.0);
    EXPECT_NEAR(m.frobenius_norm() * m.frobenius_norm(), 20.0, 1e-12);
  }
}

TEST(Hc, CountAboveTolerance) {
  const MatrixSpec spec{HcSpec{512, 500}, 2};
  const Vector want = prescribed_singular_values(spec);
  EXPECT_EQ(want[0], 100.0);
  EXPECT_EQ(want[1], 10.0);
  EXPECT_EQ(std::count_if(want.begin(), want.end(), [](double x) { return x > 1e-10; }), 334);
  const Vector got = singular_values(generate(spec));
  EXPECT_EQ(std::count_if(got.begin(), got.end(), [](double x) { return x > 1e-10; }), 334);
}

TEST(Hc, SpectrumMatches) {
  const MatrixSpec spec{HcSpec{120, 60}, 3};
  expect_spectrum(singular_values(generate(spec)), prescribed_singular_values(spec), 1e-8, 1e-5);
}

TEST(Stewart, SpectrumBeforeAndAfterPerturbation) {
  const StewartSpec st{200, 80, 0.8};
  const MatrixSpec spec{st, 5};
  const Vector want = prescribed_singular_values(spec);
  EXPECT_NEAR(want[40] / std::pow(0.8, 40), 1.0, 1e-14);
  EXPECT_EQ(want[41], 0.0);
  const double c = std::pow(0.8, 40.0);
  const Vector got = singular_values(generate(spec));
  const double tol = c * std::sqrt(200.0 * 80.0);
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], tol);
}

TEST(Generators, BitIdenticalForSameSeed) {
  const MatrixSpec specs[] = {{DevilsStairsSpec{64, 30, 1e-3, 10}, 8}, {StewartSpec{64, 30, 0.8}, 8},
                              {HcSpec{64, 30}, 8},                      {SampledIdentitySpec{64, 30}, 8},
                              {GaussianSpec{64, 30}, 8},                {KahanSpec{30, 0.9, 64}, 8}};
  for (const MatrixSpec& s : specs) {
    EXPECT_EQ(generate(s), generate(s)) << format_matrix_spec(s);
    MatrixSpec other = s;
    other.seed = 9;
    if (!std::holds_alternative<KahanSpec>(s.kind)) {
      EXPECT_FALSE(generate(s) == generate(other));
    }
  }
}

TEST(Generators, HaarColumnsAreOrthonormal) {
  Rng rng(3);
  const Matrix q = haar_orthonormal(50, 20, rng);
  EXPECT_LE((transpose_times(q, q) - Matrix::identity(20)).max_abs(), 1e-14);
}

TEST(MatrixSpecText, ParseFormatRoundTrip) {
  const char* texts[] = {"kahan:128x32,s=0.99", "stairs:8192x500,q=0.001,L=100", "stewart:256x100,q=0.8",
                         "hc:8192x500",         "sampled-identity:8192x100",     "gaussian:64x12",
                         "diag:1/2/3,pad=8"};
  for (const char* t : texts) {
    const MatrixSpec s = parse_matrix_spec(t, 7);
    const MatrixSpec back = parse_matrix_spec(format_matrix_spec(s), 7);
    EXPECT_EQ(format_matrix_spec(back), format_matrix_spec(s)) << t;
    EXPECT_EQ(s.rows(), back.rows());
    EXPECT_EQ(s.cols(), back.cols());
    const MatrixSpec j = matrix_spec_from_json(to_json(s));
    EXPECT_EQ(format_matrix_spec(j), format_matrix_spec(s));
    EXPECT_EQ(j.seed, 7u);
  }
  const MatrixSpec r = parse_matrix_spec("diag:1..10");
  EXPECT_EQ(r.rows(), 10u);
  EXPECT_EQ(generate(r)(9, 9), 10.0);
  EXPECT_EQ(generate(parse_matrix_spec("identity:16")), Matrix::identity(16));
  const MatrixSpec k = parse_matrix_spec("kahan:128x32");
  EXPECT_EQ(k.rows(), 128u);
  EXPECT_EQ(k.cols(), 32u);
}

TEST(MatrixSpecText, Rejects) {
  EXPECT_THROW(parse_matrix_spec("bogus:3x3"), DomainError);
  EXPECT_THROW(parse_matrix_spec("hc:3x4x5"), DomainError);
  EXPECT_THROW(parse_matrix_spec("stairs:10x20"), DomainError);
  EXPECT_THROW(parse_matrix_spec("stairs:20x10,q=2"), DomainError);
  EXPECT_THROW(matrix_spec_from_json("{\"kind\":\"hc\"}"), DomainError);
}
