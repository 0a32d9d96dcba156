#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spectra/errors.hpp"
#include "spectra/geometry.hpp"
#include "spectra/srrqr.hpp"
#include "spectra/svd.hpp"
#include "spectra/testmat.hpp"

using namespace spectra;

namespace {

SrrqrConfig rank_config(std::size_t k, double f = 2.0) { return {f, TargetRank{k}, false}; }
SrrqrConfig tol_config(double tau, double f = 2.0) { return {f, Tolerance{tau}, false}; }

std::vector<std::size_t> leading(const Permutation& p, std::size_t k) {
  return {p.forward().begin(), p.forward().begin() + static_cast<std::ptrdiff_t>(k)};
}

}  // namespace

TEST(SrrqrConfig, Validation) {
  EXPECT_THROW(rank_config(2, 1.0).validate(), DomainError);
  EXPECT_THROW(rank_config(0).validate(), DomainError);
  EXPECT_THROW(tol_config(0.0).validate(), DomainError);
  EXPECT_THROW(tol_config(-1.0).validate(), DomainError);
  EXPECT_NO_THROW(tol_config(1e-3).validate());
  EXPECT_THROW(srrqr_select(Matrix::identity(3), rank_config(4)), DomainError);
}

TEST(DetRatio, Diagonal) {
  const Vector d{2, 1};
  const SrrqrState s = SrrqrState::from_partial(Matrix::diagonal(d), 1);
  EXPECT_DOUBLE_EQ(s.omega()[0], 0.5);
  EXPECT_DOUBLE_EQ(s.gamma_entry(0), 1.0);
  EXPECT_EQ(s.a_entry(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(det_ratio(s, 0, 0), 0.5);
}

TEST(DetRatio, IdentityIsOne) {
  const SrrqrState s = SrrqrState::from_partial(Matrix::identity(5), 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(s.det_ratio(i, j), 1.0);
  EXPECT_DOUBLE_EQ(rho(s), 1.0);
  EXPECT_DOUBLE_EQ(rho_hat(s), 1.0);
}

TEST(DetRatio, RefactorizationOracle) {
  Rng rng(21);
  const Matrix m = gaussian_matrix(8, 6, rng);
  const SrrqrState s = SrrqrState::from_partial(m, 3);
  const Eigen::MatrixXd e = oracle::to_eigen(m);
  const std::vector<std::size_t> order{0, 1, 2, 3, 4, 5};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_NEAR(s.det_ratio(i, j) / oracle::swap_ratio(e, order, 3, i, j), 1.0, 1e-8);
}

TEST(Rho, DiagonalBestSwap) {
  const Vector d{1, 2, 3};
  const SrrqrState s = SrrqrState::from_partial(Matrix::diagonal(d), 1);
  EXPECT_NEAR(s.rho(), 3.0, 1e-15);
}

TEST(Rho, ExhaustiveOracleAndHatBounds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const Matrix m = gaussian_matrix(8, 6, rng);
    const SrrqrState s = SrrqrState::from_partial(m, 3);
    const double want = oracle::exhaustive_rho(oracle::to_eigen(m), {0, 1, 2, 3, 4, 5}, 3);
    EXPECT_NEAR(s.rho() / want, 1.0, 1e-8);
    EXPECT_LE(s.rho_hat(), s.rho() * (1 + 1e-12));
    EXPECT_LE(s.rho(), std::sqrt(2.0) * s.rho_hat() * (1 + 1e-12));
  }
}

TEST(Rho, FullRankHasNothingToSwap) {
  EXPECT_EQ(SrrqrState::from_partial(Matrix::identity(3), 3).rho(), 0.0);
}

TEST(Interchange, DiagonalSwap) {
  const Vector d{1, 3};
  const SrrqrState s = interchange(SrrqrState::from_partial(Matrix::diagonal(d), 1), 0, 0);
  EXPECT_NEAR(s.r11()(0, 0), 3.0, 1e-15);
  EXPECT_EQ(s.perm().forward(), (std::vector<std::size_t>{1, 0}));
}

TEST(Interchange, TwiceRestoresPermutation) {
  Rng rng(22);
  const SrrqrState s0 = SrrqrState::from_partial(gaussian_matrix(8, 6, rng), 3);
  const SrrqrState s2 = interchange(interchange(s0, 1, 2), 1, 2);
  EXPECT_EQ(s2.perm(), s0.perm());
  EXPECT_LE((s2.r11() - s0.r11()).max_abs(), 1e-12);
}

TEST(Interchange, MatchesFreshFactorization) {
  Rng rng(23);
  const Matrix m = gaussian_matrix(8, 6, rng);
  SrrqrState s = SrrqrState::from_partial(m, 3);
  const std::pair<std::size_t, std::size_t> swaps[] = {{0, 2}, {2, 0}, {1, 1}, {0, 0}};
  for (auto [i, j] : swaps) {
    s.interchange(i, j);
    const PartialQR fresh = partial_qr(s.perm().apply(m), 3);
    EXPECT_LE((s.r().block(0, 0, 3, 6) - fresh.r_top()).max_abs(), 1e-10);
    // R22 is only unique up to a left orthogonal factor; compare Gram matrices.
    const Matrix g1 = transpose_times(s.r22(), s.r22());
    const Matrix g2 = transpose_times(fresh.r22(), fresh.r22());
    EXPECT_LE((g1 - g2).max_abs(), 1e-10);
    EXPECT_LE(s.consistency_error(), 1e-10);
  }
}

TEST(Interchange, OutOfRange) {
  SrrqrState s = SrrqrState::from_partial(Matrix::identity(4), 2);
  EXPECT_THROW(s.interchange(2, 0), DimensionError);
  EXPECT_THROW(s.interchange(0, 2), DimensionError);
}

TEST(Srrqr, DiagonalSelection) {
  const Vector d{1, 2, 3};
  const SrrqrResult res = srrqr(Matrix::diagonal(d), rank_config(2));
  EXPECT_EQ(res.k, 2u);
  EXPECT_EQ(res.factorization.perm()[0], 2u);
  EXPECT_EQ(res.factorization.perm()[1], 1u);
  const Matrix r11 = res.factorization.r11();
  EXPECT_NEAR(r11(0, 0), 3.0, 1e-15);
  EXPECT_NEAR(r11(1, 1), 2.0, 1e-15);
  EXPECT_LE(res.rho, 1.0);
}

TEST(Srrqr, ToleranceKeepsUnitColumns) {
  EXPECT_EQ(srrqr(Matrix::identity(4), tol_config(0.5)).k, 4u);
}

TEST(Srrqr, ToleranceCut) {
  const Vector d{3, 2, 1e-12};
  EXPECT_EQ(srrqr(Matrix::diagonal(d, 8), tol_config(1e-6)).k, 2u);
}

TEST(Srrqr, RankDeficientTargetThrows) {
  const Vector d{3, 0, 0};
  EXPECT_THROW(srrqr(Matrix::diagonal(d), rank_config(2)), SingularityError);
}

TEST(Srrqr, KahanBeatsQrcp) {
  const Matrix m = generate({KahanSpec{40, 0.99, 0}, 0});
  const Vector sigma = singular_values(m);
  const SrrqrResult res = srrqr(m, rank_config(39));
  const double ratio = sigma[38] / singular_values(res.factorization.r11())[38];
  EXPECT_LE(ratio, std::sqrt(1.0 + 4.0 * 39.0));
  const double qrcp_ratio = sigma[38] / singular_values(qrcp(m, 39).r11())[38];
  EXPECT_GT(qrcp_ratio, ratio);
  EXPECT_GT(res.swap_count, 0u);
}

TEST(Srrqr, SwapCap) {
  EXPECT_EQ(swap_cap(3, 15, 2.0), 118u);
  EXPECT_GE(swap_cap(0, 1, 2.0), 1u);
}

TEST(Srrqr, RecomputePathAgreesWithUpdates) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(100 + seed);
    const Matrix m = gaussian_matrix(14, 10, rng);
    SrrqrConfig cfg = rank_config(4, 1.05);
    const SrrqrState a = srrqr_select(m, cfg);
    cfg.recompute_maintained = true;
    const SrrqrState b = srrqr_select(m, cfg);
    EXPECT_EQ(a.perm(), b.perm()) << "seed " << seed;
    EXPECT_NEAR(a.rho(), b.rho(), 1e-10);
    EXPECT_LE(a.consistency_error(), 1e-10);
  }
}

TEST(Srrqr, LowRankZeroTrailingSingularValues) {
  Rng rng(31);
  const Matrix m = gaussian_matrix(10, 5, rng) * gaussian_matrix(5, 8, rng);
  const SrrqrResult res = srrqr(m, rank_config(3));
  const Vector s22 = singular_values(res.factorization.r22());
  for (std::size_t j = 2; j < s22.size(); ++j) EXPECT_LE(s22[j], 1e-12 * m.frobenius_norm());
}

TEST(Srrqr, LeadingColumnsArePartOfPermutation) {
  Rng rng(32);
  const Matrix m = gaussian_matrix(12, 9, rng);
  const SrrqrResult res = srrqr(m, rank_config(4));
  const Matrix sel = m.select_columns(leading(res.factorization.perm(), 4));
  EXPECT_NEAR(volume(sel), std::exp(log_volume(res.factorization.r11())), 1e-10 * volume(sel));
}
