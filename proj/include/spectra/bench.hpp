#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/rand_srrqr.hpp"
#include "spectra/testmat.hpp"

namespace spectra::bench {

enum class Algo { Srrqr, RandRank, RandTol, Qrcp };

std::string to_string(Algo algo);
/// "srrqr", "rand-rank", "rand-tau" (or "rand-tol"), "qrcp".
Algo parse_algo(std::string_view name);

/// Matrix source: a generator spec, or a file in one of the dense-core formats.
struct MatrixSource {
  std::optional<MatrixSpec> spec;
  std::string path;

  /// "file:PATH" loads a file; anything else is parsed as a generator spec.
  static MatrixSource parse(std::string_view text, std::uint64_t seed);
  std::string label() const;
  Matrix load() const;
};

struct RunConfig {
  MatrixSource matrix;
  Algo algo = Algo::RandRank;
  double f = 2.0;
  std::optional<std::size_t> k;
  std::optional<double> tau;
  SketchKind kind = SketchKind::Srht;
  std::optional<std::size_t> d;
  SizingPolicy sizing = SizingPolicy::RangeEmbedding;
  double target_epsilon = 0.25;
  std::vector<std::uint64_t> seeds{0};
  std::string experiment = "factor";

  /// Throws DomainError unless exactly the parameter the algorithm needs is set
  /// (k for rand-rank and qrcp, tau for rand-tau, one of them for srrqr).
  void validate() const;
  bool randomized() const noexcept { return algo == Algo::RandRank || algo == Algo::RandTol; }
};

struct RunRecord {
  std::string experiment;
  std::string matrix;
  Algo algo = Algo::Srrqr;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::optional<SketchKind> kind;
  std::size_t d = 0;
  double f = 2.0;
  double f_tilde = 2.0;
  std::optional<double> epsilon_measured;
  std::optional<double> epsilon_nominal;
  RatioReport ratios;
  QlpResult qlp;
  std::size_t swap_count = 0;
  /// Selected original column indices, in factorization order.
  std::vector<std::size_t> columns;
  double sketch_ms = 0.0;
  double select_ms = 0.0;
  double qr_ms = 0.0;
  double total_ms = 0.0;
};

/// Number of worker threads: SPECTRA_RRQR_THREADS if set and positive, else the
/// hardware concurrency; never more than `jobs`.
std::size_t worker_count(std::size_t jobs);

/// Runs the configured algorithm on the matrix, once for deterministic
/// algorithms and once per seed for randomized ones. Records come back in seed
/// order regardless of which worker produced them.
std::vector<RunRecord> run(const RunConfig& config);
std::vector<RunRecord> run(const RunConfig& config, const Matrix& m);

/// One record against precomputed singular values of m.
RunRecord run_one(const RunConfig& config, const Matrix& m, std::span<const double> sigma_m, std::uint64_t seed);

/// CSV header: experiment,algo,seed,k,series,i_or_j,ratio,bound. `series` is
/// "leading" or "trailing"; i_or_j is 1-based; undefined trailing ratios print "NA".
void write_csv_header(std::ostream& out);
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);

/// JSON array of records with keys k, seed, kind, d, f, epsilon_measured,
/// ratios, bound, l_values, r_values, swap_count, timings_ms (plus context).
std::string records_to_json(const std::vector<RunRecord>& records, int indent = 2);

struct Check {
  std::string name;
  double measured = 0.0;
  double limit = 0.0;
  bool passed = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool ok() const noexcept;
  std::size_t violations() const noexcept;
};

/// Runs the configuration and evaluates every applicable bound:
/// interlacing, the singular value bounds and |R11⁻¹R12| bound (with f, or f̃
/// for randomized runs), an exhaustive swap scan of the final factorization,
/// and for randomized runs with measured ε̂ the singular value, least-squares,
/// determinant-ratio, column-norm and Frobenius sandwiches of the sketch.
VerifyReport verify(const RunConfig& config);
VerifyReport verify(const RunConfig& config, const Matrix& m);

/// "name measured limit PASS|FAIL detail", one line per check, then a summary line.
void print_report(std::ostream& out, const VerifyReport& report);

struct VolumePoint {
  std::size_t n = 0;
  double log_volume = 0.0;
  double volume = 0.0;
};

struct VolumeDecay {
  std::vector<VolumePoint> points;
  /// Least-squares slope of log V against n.
  double slope = 0.0;
  double intercept = 0.0;
};

/// V(Ω·M) for M the first n columns of one sampled-identity m x n_max matrix,
/// Ω a single d x m sketch, for each n in `ns`.
VolumeDecay volume_decay(std::size_t m, std::size_t d, const std::vector<std::size_t>& ns, std::uint64_t seed,
                         SketchKind kind = SketchKind::Srht);

/// Ordinary least-squares line fit; returns {slope, intercept}.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

void write_volume_csv(std::ostream& out, const VolumeDecay& decay);
/// gnuplot script plotting log V against n from `csv_path`.
std::string volume_gnuplot_script(const std::string& csv_path);

/// "lo:hi:step" (inclusive) or a single value.
std::vector<std::size_t> parse_range(std::string_view text);

struct TimingResult {
  double deterministic_ms = 0.0;
  double randomized_ms = 0.0;
  std::size_t deterministic_k = 0;
  std::size_t randomized_k = 0;
};

/// Wall time of deterministic SRRQR against the randomized pipeline on the same
/// matrix (k or tau from the config; the randomized run uses the first seed).
TimingResult timing(const RunConfig& config, const Matrix& m);

}  // namespace spectra::bench
