#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>

#include "execute.hpp"
#include "spectra/errors.hpp"
#include "spectra/matrix_io.hpp"
#include "spectra/svd.hpp"

namespace spectra::bench {

std::string to_string(Algo algo) {
  switch (algo) {
    case Algo::Srrqr:
      return "srrqr";
    case Algo::RandRank:
      return "rand-rank";
    case Algo::RandTol:
      return "rand-tau";
    case Algo::Qrcp:
      return "qrcp";
  }
  return "unknown";
}

Algo parse_algo(std::string_view name) {
  if (name == "srrqr") return Algo::Srrqr;
  if (name == "rand-rank" || name == "rand-r") return Algo::RandRank;
  if (name == "rand-tau" || name == "rand-tol") return Algo::RandTol;
  if (name == "qrcp") return Algo::Qrcp;
  throw DomainError("unknown algorithm '" + std::string(name) + "'");
}

MatrixSource MatrixSource::parse(std::string_view text, std::uint64_t seed) {
  MatrixSource src;
  if (text.starts_with("file:")) {
    src.path = std::string(text.substr(5));
    if (src.path.empty()) throw DomainError("matrix source: empty file path");
  } else {
    src.spec = parse_matrix_spec(text, seed);
  }
  return src;
}

std::string MatrixSource::label() const { return spec ? format_matrix_spec(*spec) : "file:" + path; }

Matrix MatrixSource::load() const { return spec ? generate(*spec) : load_matrix(path); }

void RunConfig::validate() const {
  if (!(f > 1.0)) throw DomainError("run config: f must exceed 1");
  if (k && tau) throw DomainError("run config: set either k or tau, not both");
  switch (algo) {
    case Algo::RandRank:
    case Algo::Qrcp:
      if (!k) throw DomainError("run config: " + to_string(algo) + " needs k");
      break;
    case Algo::RandTol:
      if (!tau) throw DomainError("run config: rand-tau needs tau");
      break;
    case Algo::Srrqr:
      if (!k && !tau) throw DomainError("run config: srrqr needs k or tau");
      break;
  }
  if (k && *k == 0) throw DomainError("run config: k must be at least 1");
  if (tau && !(*tau > 0.0)) throw DomainError("run config: tau must be positive");
  if (seeds.empty()) throw DomainError("run config: no seeds");
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPECTRA_RRQR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) workers = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(workers, jobs));
}

namespace detail {

RandSrrqrOptions rand_options(const RunConfig& config, std::uint64_t seed) {
  RandSrrqrOptions opt;
  opt.f = config.f;
  opt.kind = config.kind;
  opt.d = config.d;
  opt.seed = seed;
  opt.target_epsilon = config.target_epsilon;
  opt.sizing = config.sizing;
  return opt;
}

Outcome execute(const RunConfig& config, const Matrix& m, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  switch (config.algo) {
    case Algo::Srrqr: {
      SrrqrConfig c;
      c.f = config.f;
      if (config.k) c.mode = TargetRank{*config.k};
      else c.mode = Tolerance{*config.tau};
      SrrqrResult res = srrqr(m, c);
      out.factorization = std::move(res.factorization);
      out.swap_count = res.swap_count;
      break;
    }
    case Algo::Qrcp:
      out.factorization = qrcp(m, *config.k);
      break;
    case Algo::RandRank:
    case Algo::RandTol: {
      const RandSrrqrOptions opt = rand_options(config, seed);
      RandSrrqrResult res = config.algo == Algo::RandRank ? rand_srrqr_rank(m, *config.k, opt)
                                                          : rand_srrqr_tol(m, *config.tau, opt);
      out.factorization = res.factorization;
      out.swap_count = res.sketch_result.swap_count;
      out.randomized = std::move(res);
      break;
    }
  }
  out.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<std::uint64_t> effective_seeds(const RunConfig& config) {
  if (config.randomized()) return config.seeds;
  return {config.seeds.front()};
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = worker_count(count);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

RunRecord run_one(const RunConfig& config, const Matrix& m, std::span<const double> sigma_m, std::uint64_t seed) {
  const detail::Outcome out = detail::execute(config, m, seed);
  RunRecord rec;
  rec.experiment = config.experiment;
  rec.matrix = config.matrix.label();
  rec.algo = config.algo;
  rec.seed = seed;
  rec.k = out.factorization.k();
  rec.f = config.f;
  rec.swap_count = out.swap_count;
  rec.total_ms = out.total_ms;
  const auto& fwd = out.factorization.perm().forward();
  rec.columns.assign(fwd.begin(), fwd.begin() + static_cast<std::ptrdiff_t>(rec.k));

  if (out.randomized) {
    const RandSrrqrResult& res = *out.randomized;
    rec.kind = res.op.kind();
    rec.d = res.op.d();
    rec.f_tilde = res.f_tilde;
    if (res.distortion_source == DistortionSource::Measured) rec.epsilon_measured = res.distortion;
    else rec.epsilon_nominal = res.distortion;
    rec.sketch_ms = res.timings.sketch_ms;
    rec.select_ms = res.timings.select_ms;
    rec.qr_ms = res.timings.qr_ms;
    rec.ratios = ratio_report(sigma_m, res);
  } else {
    rec.f_tilde = config.f;
    rec.ratios = ratio_report(sigma_m, out.factorization, config.f);
  }
  if (rec.k > 0) rec.qlp = qlp_values(out.factorization);
  return rec;
}

std::vector<RunRecord> run(const RunConfig& config, const Matrix& m) {
  config.validate();
  const Vector sigma = singular_values(m);
  const auto seeds = detail::effective_seeds(config);
  std::vector<RunRecord> records(seeds.size());
  detail::parallel_for(seeds.size(), [&](std::size_t i) { records[i] = run_one(config, m, sigma, seeds[i]); });
  return records;
}

std::vector<RunRecord> run(const RunConfig& config) {
  config.validate();
  return run(config, config.matrix.load());
}

TimingResult timing(const RunConfig& config, const Matrix& m) {
  if (!config.k && !config.tau) throw DomainError("timing: set k or tau");
  TimingResult t;
  RunConfig det = config;
  det.algo = Algo::Srrqr;
  const detail::Outcome d = detail::execute(det, m, config.seeds.front());
  t.deterministic_ms = d.total_ms;
  t.deterministic_k = d.factorization.k();

  RunConfig rnd = config;
  rnd.algo = config.k ? Algo::RandRank : Algo::RandTol;
  const detail::Outcome r = detail::execute(rnd, m, config.seeds.front());
  t.randomized_ms = r.total_ms;
  t.randomized_k = r.factorization.k();
  return t;
}

}  // namespace spectra::bench
