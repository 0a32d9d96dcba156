#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "spectra/bench.hpp"
#include "spectra/errors.hpp"

using namespace spectra;
using namespace spectra::bench;

namespace {

RunConfig config(const std::string& matrix, Algo algo, std::optional<std::size_t> k, std::optional<double> tau = {}) {
  RunConfig c;
  c.matrix = MatrixSource::parse(matrix, 0);
  c.algo = algo;
  c.k = k;
  c.tau = tau;
  return c;
}

bool has_failed(const VerifyReport& r, const std::string& name) {
  for (const Check& c : r.checks)
    if (!c.passed && c.name.find(name) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Verify, IdentityPassesWithUnitRatios) {
  for (std::size_t k : {1, 8, 15}) {
    for (Algo algo : {Algo::Srrqr, Algo::Qrcp, Algo::RandRank}) {
      RunConfig c = config("identity:16", algo, k);
      c.kind = SketchKind::Gaussian;
      c.d = 16;
      const VerifyReport rep = verify(c);
      EXPECT_TRUE(rep.ok()) << to_string(algo) << " k=" << k;
      if (algo == Algo::RandRank) continue;
      for (const RunRecord& r : run(c)) {
        for (double x : r.ratios.leading_ratios) EXPECT_EQ(x, 1.0);
        for (const auto& x : r.ratios.trailing_ratios) EXPECT_EQ(x.value(), 1.0);
      }
    }
  }
}

TEST(Verify, RandomizedRhoWithinInflatedF) {
  RunConfig c = config("gaussian:64x12", Algo::RandRank, 6);
  c.matrix = MatrixSource::parse("gaussian:64x12", 3);
  c.seeds.clear();
  for (std::uint64_t s = 0; s < 20; ++s) c.seeds.push_back(s);
  const VerifyReport rep = verify(c);
  EXPECT_TRUE(rep.ok());
  std::size_t rho_checks = 0;
  for (const Check& ch : rep.checks) rho_checks += ch.name.find("rho.exhaustive") != std::string::npos;
  const auto records = run(c);
  std::size_t measurable = 0;
  for (const RunRecord& r : records) measurable += r.epsilon_measured && *r.epsilon_measured < 1.0;
  EXPECT_EQ(rho_checks, measurable);
  EXPECT_GT(measurable, 0u);
}

TEST(Verify, KahanQrcpViolatesBound) {
  const VerifyReport rep = verify(config("kahan:128x32", Algo::Qrcp, 31));
  EXPECT_FALSE(rep.ok());
  EXPECT_TRUE(has_failed(rep, "bound."));
  std::ostringstream out;
  print_report(out, rep);
  EXPECT_NE(out.str().find("VIOLATIONS"), std::string::npos);
}

TEST(Verify, SrrqrOnKahanPasses) {
  EXPECT_TRUE(verify(config("kahan:128x32", Algo::Srrqr, 31)).ok());
}

TEST(Verify, ToleranceRuns) {
  EXPECT_TRUE(verify(config("stairs:256x40,L=10", Algo::Srrqr, {}, 1e-5)).ok());
  RunConfig c = config("stairs:256x40,L=10", Algo::RandTol, {}, 1e-5);
  c.seeds = {1, 2, 3};
  const VerifyReport rep = verify(c);
  EXPECT_TRUE(rep.ok());
  for (const RunRecord& r : run(c)) EXPECT_EQ(r.k, 20u);
}

TEST(RunConfig, Validation) {
  EXPECT_THROW(config("identity:4", Algo::RandRank, {}).validate(), DomainError);
  EXPECT_THROW(config("identity:4", Algo::RandTol, 2).validate(), DomainError);
  EXPECT_THROW(config("identity:4", Algo::Srrqr, 2, 1e-3).validate(), DomainError);
  EXPECT_THROW(config("identity:4", Algo::Qrcp, {}, 1e-3).validate(), DomainError);
  EXPECT_NO_THROW(config("identity:4", Algo::Srrqr, {}, 1e-3).validate());
  RunConfig c = config("identity:4", Algo::RandRank, 2);
  c.seeds.clear();
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_THROW(parse_algo("svd"), DomainError);
  EXPECT_EQ(parse_algo("rand-tol"), Algo::RandTol);
}

TEST(Run, RecordsComeBackInSeedOrder) {
  RunConfig c = config("gaussian:40x10", Algo::RandRank, 4);
  c.kind = SketchKind::Gaussian;
  c.d = 20;
  c.seeds = {9, 3, 7, 1};
  const auto records = run(c);
  ASSERT_EQ(records.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(records[i].seed, c.seeds[i]);
  EXPECT_EQ(records[0].columns.size(), 4u);
  EXPECT_EQ(records[0].d, 20u);

  c.algo = Algo::Srrqr;
  EXPECT_EQ(run(c).size(), 1u);
}

TEST(Run, JsonExport) {
  RunConfig c = config("stairs:128x20,L=5", Algo::RandRank, 5);
  c.seeds = {0, 1};
  const auto j = nlohmann::json::parse(records_to_json(run(c)));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  for (const char* key : {"k", "seed", "kind", "d", "f", "epsilon_measured", "ratios", "bound", "l_values", "r_values",
                          "swap_count", "timings_ms"})
    EXPECT_TRUE(j[0].contains(key)) << key;
  EXPECT_EQ(j[1]["seed"], 1);
  EXPECT_EQ(j[0]["l_values"].size(), 5u);
}

TEST(Run, CsvSchema) {
  std::ostringstream out;
  write_csv_header(out);
  EXPECT_EQ(out.str(), "experiment,algo,seed,k,series,i_or_j,ratio,bound\n");
  std::ostringstream rows;
  write_csv(rows, run(config("diag:4/3/2/0", Algo::Srrqr, 2)));
  EXPECT_NE(rows.str().find("trailing,2,NA,"), std::string::npos) << rows.str();
}

TEST(Run, GoldenRatiosFile) {
  RunConfig c = config("diag:1..10", Algo::Srrqr, 5);
  c.experiment = "ratios";
  std::ostringstream got;
  write_csv(got, run(c));
  std::ifstream in(std::string(SPECTRA_GOLDEN_DIR) + "/ratios_diag10_k5.csv");
  ASSERT_TRUE(in.good());
  std::stringstream want;
  want << in.rdbuf();
  EXPECT_EQ(got.str(), want.str());
}

TEST(Workers, EnvironmentCap) {
  setenv("SPECTRA_RRQR_THREADS", "3", 1);
  EXPECT_EQ(worker_count(10), 3u);
  EXPECT_EQ(worker_count(2), 2u);
  setenv("SPECTRA_RRQR_THREADS", "junk", 1);
  EXPECT_GE(worker_count(10), 1u);
  unsetenv("SPECTRA_RRQR_THREADS");
  EXPECT_GE(worker_count(10), 1u);
}

TEST(Range, Parse) {
  EXPECT_EQ(parse_range("100:300:100"), (std::vector<std::size_t>{100, 200, 300}));
  EXPECT_EQ(parse_range("7"), (std::vector<std::size_t>{7}));
  EXPECT_THROW(parse_range("3:1:1"), DomainError);
  EXPECT_THROW(parse_range("1:5:0"), DomainError);
}

TEST(VolumeDecay, FitAndMonotone) {
  const auto [slope, intercept] = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(slope, 2.0, 1e-14);
  EXPECT_NEAR(intercept, 1.0, 1e-14);

  const VolumeDecay vd = volume_decay(512, 200, {20, 60, 100, 140}, 1, SketchKind::Srht);
  ASSERT_EQ(vd.points.size(), 4u);
  for (std::size_t i = 1; i < vd.points.size(); ++i) EXPECT_LT(vd.points[i].log_volume, vd.points[i - 1].log_volume);
  EXPECT_LT(vd.slope, 0.0);
  EXPECT_THROW(volume_decay(512, 100, {150}, 1), DomainError);
  std::ostringstream csv;
  write_volume_csv(csv, vd);
  EXPECT_EQ(csv.str().substr(0, 21), "n,log_volume,volume\n2");
  EXPECT_NE(volume_gnuplot_script("v.csv").find("v.csv"), std::string::npos);
}

TEST(Timing, ReportsBothPaths) {
  RunConfig c = config("stairs:512x60,L=20", Algo::RandTol, {}, 1e-10);
  const TimingResult t = timing(c, c.matrix.load());
  EXPECT_EQ(t.deterministic_k, 60u);
  EXPECT_EQ(t.randomized_k, 60u);
  EXPECT_GT(t.deterministic_ms, 0.0);
  EXPECT_GT(t.randomized_ms, 0.0);
}

TEST(MatrixSource, FileRoundTrip) {
  const MatrixSource s = MatrixSource::parse("file:/nonexistent/path.txt", 0);
  EXPECT_THROW(s.load(), IoError);
  EXPECT_EQ(MatrixSource::parse("hc:64x10", 5).load(), generate(parse_matrix_spec("hc:64x10", 5)));
}
