// spectra_rrqr: generate test matrices, run (randomized) strong RRQR and QRCP,
// verify bounds, and reproduce the volume-decay and timing experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spectra/bench.hpp"
#include "spectra/errors.hpp"
#include "spectra/matrix_io.hpp"

namespace {

using namespace spectra;
using namespace spectra::bench;

struct RunFlags {
  std::string matrix;
  std::uint64_t matrix_seed = 0;
  std::string algo = "rand-rank";
  std::optional<std::size_t> k;
  std::optional<double> tau;
  double f = 2.0;
  std::string sketch = "srht";
  std::optional<std::size_t> d;
  std::string sizing = "range";
  double epsilon = 0.25;
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::string format;
  std::string out = "-";
};

void add_run_flags(CLI::App* cmd, RunFlags& f, const std::string& default_format) {
  f.format = default_format;
  cmd->add_option("--matrix", f.matrix, "Matrix spec (e.g. hc:8192x500) or file:PATH")->required();
  cmd->add_option("--matrix-seed", f.matrix_seed, "Seed for the matrix generator");
  cmd->add_option("--algo", f.algo, "srrqr | rand-rank | rand-tau | qrcp")
      ->check(CLI::IsMember({"srrqr", "rand-rank", "rand-tau", "rand-tol", "qrcp"}));
  cmd->add_option("--k", f.k, "Target rank");
  cmd->add_option("--tau", f.tau, "Tolerance");
  cmd->add_option("--f", f.f, "Interchange threshold f > 1");
  cmd->add_option("--sketch", f.sketch, "gaussian | srht | identity")
      ->check(CLI::IsMember({"gaussian", "srht", "identity"}));
  cmd->add_option("--d", f.d, "Sketch rows (default: floor(3n ln m / ln n))");
  cmd->add_option("--sizing", f.sizing, "Default sketch size policy: range | k+1")
      ->check(CLI::IsMember({"range", "k+1"}));
  cmd->add_option("--epsilon", f.epsilon, "Nominal distortion reported when it cannot be measured");
  cmd->add_option("--seed", f.seed, "First sketch seed");
  cmd->add_option("--seeds", f.seeds, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  cmd->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "Output path, - for stdout");
}

RunConfig to_config(const RunFlags& f, const std::string& experiment) {
  RunConfig c;
  c.matrix = MatrixSource::parse(f.matrix, f.matrix_seed);
  c.algo = parse_algo(f.algo);
  c.f = f.f;
  c.k = f.k;
  c.tau = f.tau;
  c.kind = parse_sketch_kind(f.sketch);
  c.d = f.d;
  c.sizing = f.sizing == "k+1" ? SizingPolicy::OseKPlus1 : SizingPolicy::RangeEmbedding;
  c.target_epsilon = f.epsilon;
  c.seeds.clear();
  for (std::size_t i = 0; i < f.seeds; ++i) c.seeds.push_back(f.seed + i);
  c.experiment = experiment;
  c.validate();
  return c;
}

// Writes to stdout for "-", otherwise to the named file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IoError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit_records(const RunFlags& f, const std::vector<RunRecord>& records) {
  Output out(f.out);
  if (f.format == "json") out.stream() << records_to_json(records) << '\n';
  else write_csv(out.stream(), records);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong rank-revealing QR benchmarks"};
  app.require_subcommand(1);

  std::string gen_matrix;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "-";
  auto* gen = app.add_subcommand("gen-matrix", "Generate a test matrix");
  gen->add_option("--matrix", gen_matrix, "Matrix spec")->required();
  gen->add_option("--seed,--matrix-seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output path (.bin for binary), - for text on stdout");

  RunFlags factor_flags;
  auto* factor = app.add_subcommand("factor", "Factor a matrix and export per-seed records");
  add_run_flags(factor, factor_flags, "json");

  RunFlags ratio_flags;
  auto* ratios = app.add_subcommand("ratios", "Singular value ratios as CSV");
  add_run_flags(ratios, ratio_flags, "csv");

  RunFlags verify_flags;
  auto* verify_cmd = app.add_subcommand("verify", "Check every applicable bound; nonzero exit on violation");
  add_run_flags(verify_cmd, verify_flags, "csv");

  std::size_t vd_m = 8192;
  std::size_t vd_d = 1500;
  std::string vd_n = "100:300:10";
  std::uint64_t vd_seed = 0;
  std::string vd_sketch = "srht";
  std::string vd_out = "-";
  std::string vd_gnuplot;
  auto* vd = app.add_subcommand("volume-decay", "Volume of sketched sampled-identity matrices");
  vd->add_option("--m", vd_m, "Rows");
  vd->add_option("--d", vd_d, "Sketch rows");
  vd->add_option("--n", vd_n, "Column counts lo:hi:step");
  vd->add_option("--seed", vd_seed, "Seed");
  vd->add_option("--sketch", vd_sketch, "gaussian | srht")->check(CLI::IsMember({"gaussian", "srht"}));
  vd->add_option("--out", vd_out, "CSV output path, - for stdout");
  vd->add_option("--gnuplot", vd_gnuplot, "Also write a gnuplot script to this path");

  RunFlags timing_flags;
  auto* timing_cmd = app.add_subcommand("timing", "Deterministic vs randomized wall time");
  add_run_flags(timing_cmd, timing_flags, "csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Matrix m = generate(parse_matrix_spec(gen_matrix, gen_seed));
      if (gen_out == "-") write_text(std::cout, m);
      else save_matrix(gen_out, m);
      return 0;
    }
    if (*factor) {
      emit_records(factor_flags, run(to_config(factor_flags, "factor")));
      return 0;
    }
    if (*ratios) {
      emit_records(ratio_flags, run(to_config(ratio_flags, "ratios")));
      return 0;
    }
    if (*verify_cmd) {
      const VerifyReport report = verify(to_config(verify_flags, "verify"));
      Output out(verify_flags.out);
      print_report(out.stream(), report);
      return report.ok() ? 0 : 1;
    }
    if (*vd) {
      const VolumeDecay decay = volume_decay(vd_m, vd_d, parse_range(vd_n), vd_seed, parse_sketch_kind(vd_sketch));
      {
        Output out(vd_out);
        write_volume_csv(out.stream(), decay);
      }
      if (!vd_gnuplot.empty()) {
        Output script(vd_gnuplot);
        script.stream() << volume_gnuplot_script(vd_out == "-" ? "volume.csv" : vd_out);
      }
      std::fprintf(stderr, "slope of log V per column: %.6g\n", decay.slope);
      return 0;
    }
    if (*timing_cmd) {
      const RunConfig config = to_config(timing_flags, "timing");
      const TimingResult t = timing(config, config.matrix.load());
      Output out(timing_flags.out);
      out.stream() << "algo,k,ms\n"
                   << "srrqr," << t.deterministic_k << ',' << t.deterministic_ms << '\n'
                   << (config.k ? "rand-rank," : "rand-tau,") << t.randomized_k << ',' << t.randomized_ms << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
