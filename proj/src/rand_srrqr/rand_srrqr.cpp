#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "spectra/errors.hpp"
#include "spectra/rand_srrqr.hpp"

namespace spectra {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_options(const RandSrrqrOptions& opt) {
  if (!(opt.f > 1.0) || !std::isfinite(opt.f)) throw DomainError("rand_srrqr: f must be a finite value > 1");
  if (!(opt.target_epsilon > 0.0 && opt.target_epsilon < 1.0))
    throw DomainError("rand_srrqr: target epsilon must lie in (0, 1)");
}

RandSrrqrResult run(const Matrix& m, const SrrqrConfig& config, std::optional<std::size_t> k,
                    const RandSrrqrOptions& opt) {
  check_options(opt);
  if (m.empty()) throw DomainError("rand_srrqr: empty matrix");
  m.require_finite("rand_srrqr");
  const auto start = Clock::now();

  const std::size_t rows = sketch_input_rows(opt.kind, m.rows());
  const std::size_t d = resolve_sketch_size(opt, m.rows(), m.cols(), k);
  if (k && d < *k) {
    throw DomainError("rand_srrqr: sketch size d = " + std::to_string(d) + " is smaller than k = " + std::to_string(*k));
  }
  const Matrix padded = pad_rows(m, rows);

  RandSrrqrResult res;
  res.f = opt.f;
  res.seed = opt.seed;
  res.op = SketchOperator::make(opt.kind, d, rows, opt.seed);
  res.sketch = res.op.apply(padded);
  res.timings.sketch_ms = ms_since(start);

  const auto select_start = Clock::now();
  const SrrqrState state = srrqr_select(res.sketch, config);
  res.k = state.k();
  res.sketch_result = SrrqrResult{state.to_partial_qr(), state.k(), state.rho(), state.swap_count()};
  res.timings.select_ms = ms_since(select_start);

  const auto qr_start = Clock::now();
  res.factorization = partial_qr(m, res.k, state.perm());
  res.timings.qr_ms = ms_since(qr_start);

  if (m.cols() <= opt.measure_limit) {
    const std::size_t width = std::min(rows, m.cols());
    const Matrix basis = partial_qr(padded, width).thin_q();
    res.distortion = embedding_distortion(res.op, basis);
    res.distortion_source = DistortionSource::Measured;
  } else {
    res.distortion = opt.target_epsilon;
    res.distortion_source = DistortionSource::Nominal;
  }
  res.f_tilde = inflated_f(opt.f, res.distortion);
  res.timings.total_ms = ms_since(start);
  return res;
}

}  // namespace

double inflated_f(double f, double epsilon) {
  if (epsilon >= 1.0) return std::numeric_limits<double>::infinity();
  return std::sqrt((1.0 + epsilon) / (1.0 - epsilon)) * f;
}

std::size_t resolve_sketch_size(const RandSrrqrOptions& opt, std::size_t m, std::size_t n,
                                std::optional<std::size_t> k) {
  const std::size_t rows = sketch_input_rows(opt.kind, m);
  if (opt.kind == SketchKind::Identity) {
    if (opt.d && *opt.d != rows) throw DomainError("rand_srrqr: identity sketch requires d = m");
    return rows;
  }
  if (opt.d) {
    if (*opt.d == 0 || *opt.d > rows) {
      throw DomainError("rand_srrqr: sketch size d = " + std::to_string(*opt.d) + " outside [1, " +
                        std::to_string(rows) + "]");
    }
    return *opt.d;
  }
  const std::size_t dim = (opt.sizing == SizingPolicy::OseKPlus1 && k) ? std::min(*k + 1, n) : n;
  return ose_dim(dim, rows);
}

RandSrrqrResult rand_srrqr_rank(const Matrix& m, std::size_t k, const RandSrrqrOptions& opt) {
  if (k < 1 || k > std::min(m.rows(), m.cols())) {
    throw DomainError("rand_srrqr_rank: k = " + std::to_string(k) + " outside [1, min(rows, cols)]");
  }
  SrrqrConfig config;
  config.f = opt.f;
  config.mode = TargetRank{k};
  return run(m, config, k, opt);
}

RandSrrqrResult rand_srrqr_tol(const Matrix& m, double tau, const RandSrrqrOptions& opt) {
  if (m.empty()) throw DomainError("rand_srrqr_tol: empty matrix");
  if (!(tau > 0.0) || !std::isfinite(tau) || tau <= 1e-300 * m.frobenius_norm()) {
    throw DomainError("rand_srrqr_tol: tolerance must be finite and exceed 1e-300·‖M‖_F");
  }
  SrrqrConfig config;
  config.f = opt.f;
  config.mode = Tolerance{tau};
  return run(m, config, std::nullopt, opt);
}

}  // namespace spectra
