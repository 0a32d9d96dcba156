#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>

#include "execute.hpp"
#include "spectra/errors.hpp"
#include "spectra/geometry.hpp"
#include "spectra/random.hpp"
#include "spectra/svd.hpp"

namespace spectra::bench {

namespace {

constexpr double kRatioSlack = 1e-8;
constexpr double kRandRhoSlack = 1e-6;
// Singular values below this fraction of σ_1 are not resolved to relative
// accuracy, so ratio checks against them are skipped.
constexpr double kResolvedSigma = 1e-10;

struct Collector {
  std::string prefix;
  std::vector<Check> checks;

  void at_least(const std::string& name, double measured, double limit, std::string detail = {}) {
    checks.push_back({prefix + name, measured, limit, measured >= limit, std::move(detail)});
  }
  void at_most(const std::string& name, double measured, double limit, std::string detail = {}) {
    checks.push_back({prefix + name, measured, limit, measured <= limit, std::move(detail)});
  }
};

double min_of(const Vector& v) { return v.empty() ? 1.0 : *std::min_element(v.begin(), v.end()); }
double max_of(const Vector& v) { return v.empty() ? 1.0 : *std::max_element(v.begin(), v.end()); }

Vector defined(const std::vector<std::optional<double>>& v) {
  Vector out;
  for (const auto& x : v)
    if (x) out.push_back(*x);
  return out;
}

// ρ of the k-step factor of M·Π recomputed from scratch.
SrrqrState fresh_state(const Matrix& m, const Permutation& perm, std::size_t k) {
  SrrqrState s = SrrqrState::from_partial(perm.apply(m), k);
  s.refresh();
  return s;
}

void factorization_checks(Collector& c, const Matrix& m, const PartialQR& fact, const RatioReport& rep,
                          double f_bound, double rho_slack, const std::string& f_name) {
  const Vector trailing = defined(rep.trailing_ratios);
  c.at_least("interlacing.leading", min_of(rep.leading_ratios), 1.0 - kRatioSlack);
  c.at_least("interlacing.trailing", min_of(trailing), 1.0 - kRatioSlack);
  c.at_most("bound.leading", max_of(rep.leading_ratios), rep.bound * (1.0 + kRatioSlack), "sqrt(1+" + f_name + "^2 k(n-k))");
  c.at_most("bound.trailing", max_of(trailing), rep.bound * (1.0 + kRatioSlack), "sqrt(1+" + f_name + "^2 k(n-k))");
  const std::size_t k = fact.k();
  if (k > 0 && k < m.cols()) {
    c.at_most("bound.a_max", rep.a_max, f_bound * (1.0 + kRatioSlack), "max|R11^-1 R12| vs " + f_name);
    c.at_most("rho.exhaustive", fresh_state(m, fact.perm(), k).rho(), f_bound * (1.0 + rho_slack),
              "all single swaps vs " + f_name);
  }
}

void sketch_checks(Collector& c, const Matrix& m, const RandSrrqrResult& res, const RunConfig& config,
                   std::uint64_t seed) {
  c.at_most("sketch.rho", res.sketch_result.rho, res.f * (1.0 + 1e-10), "rho of the sketch factorization vs f");
  if (res.distortion_source != DistortionSource::Measured) return;
  const double eps = res.distortion;
  if (!(eps < 1.0)) {
    c.checks.push_back({c.prefix + "embedding", eps, 1.0, true, "skipped: measured distortion >= 1"});
    return;
  }
  const double lo = std::sqrt(1.0 - eps);
  const double hi = std::sqrt(1.0 + eps);
  const std::size_t rows = res.op.m();
  const Matrix padded = pad_rows(m, rows);

  // Singular values of the sketch against those of M.
  {
    const Vector s = singular_values(m);
    const Vector ssk = singular_values(res.sketch);
    double rmin = std::numeric_limits<double>::infinity();
    double rmax = 0.0;
    for (std::size_t i = 0; i < std::min(s.size(), ssk.size()); ++i) {
      if (s[i] <= kResolvedSigma * s[0]) continue;
      rmin = std::min(rmin, ssk[i] / s[i]);
      rmax = std::max(rmax, ssk[i] / s[i]);
    }
    c.at_least("sketch.sigma_lower", rmin, lo * (1.0 - kRatioSlack), "sqrt(1-eps)");
    c.at_most("sketch.sigma_upper", rmax, hi * (1.0 + kRatioSlack), "sqrt(1+eps)");
  }

  // Sketched least squares with a random right-hand side; the distortion is
  // measured on range([M b]).
  if (m.cols() < rows) {
    Rng rng(seed ^ 0x5eedULL);
    const Vector b = gaussian_vector(m.rows(), rng);
    const Matrix ab = pad_rows(hcat(m, Matrix::column(b)), rows);
    const double eps_ab = embedding_distortion(res.op, partial_qr(ab, ab.cols()).thin_q());
    if (eps_ab < 1.0) {
      const Matrix sk = res.op.apply(ab);
      const Matrix ska = sk.columns(0, m.cols());
      const Vector skb(sk.col(m.cols()).begin(), sk.col(m.cols()).end());
      const Vector xhat = ls_solve(ska, skb);
      Vector r = ska * std::span<const double>(xhat);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= skb[i];
      const double sk_res = norm2(r);
      const double truth = ls_residual(m, b);
      const double scale = 1e-12 * (m.frobenius_norm() + norm2(b));
      c.at_least("lsq.lower", truth, sk_res / std::sqrt(1.0 + eps_ab) - scale, "|Omega(A xhat - b)|/sqrt(1+eps)");
      c.at_most("lsq.upper", truth, sk_res / std::sqrt(1.0 - eps_ab) + scale, "|Omega(A xhat - b)|/sqrt(1-eps)");
    }
  }

  const std::size_t k = res.k;
  const Permutation& perm = res.factorization.perm();
  if (k > 0 && k < m.cols()) {
    // Determinant ratios of M against those of the sketch, same permutation.
    const SrrqrState sm = fresh_state(padded, perm, k);
    const SrrqrState ss = fresh_state(res.sketch, perm, k);
    const double qlo = std::sqrt((1.0 - eps) / (1.0 + eps));
    const double qhi = 1.0 / qlo;
    double wmin = std::numeric_limits<double>::infinity();
    double wmax = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < m.cols() - k; ++j) {
        const double dm = sm.det_ratio(i, j);
        const double ds = ss.det_ratio(i, j);
        if (ds < 1e-8 * ss.rho() || dm < 1e-8 * sm.rho()) continue;
        wmin = std::min(wmin, dm / ds);
        wmax = std::max(wmax, dm / ds);
      }
    }
    if (wmax > 0.0) {
      c.at_least("det_ratio.lower", wmin, qlo * (1.0 - kRatioSlack), "sqrt((1-eps)/(1+eps))");
      c.at_most("det_ratio.upper", wmax, qhi * (1.0 + kRatioSlack), "sqrt((1+eps)/(1-eps))");
    }
  }

  if (k < std::min(m.rows(), m.cols())) {
    // Trailing column norms of M against the sketch's, with an absolute floor
    // for columns at rounding level.
    const Vector g = column_norms(res.factorization.r22());
    const Vector gs = res.sketch_result.factorization.k() == k
                          ? column_norms(res.sketch_result.factorization.r22())
                          : Vector(g.size(), 0.0);
    const double floor = 1e-12 * m.frobenius_norm();
    double worst_upper = 0.0;
    double worst_lower = 0.0;
    double f2 = 0.0;
    double f2s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double up = gs[j] / std::sqrt(1.0 - eps) + floor;
      const double down = std::max(gs[j] / std::sqrt(1.0 + eps) - floor, 0.0);
      worst_upper = std::max(worst_upper, g[j] / up);
      if (g[j] > 0.0) worst_lower = std::max(worst_lower, down / g[j]);
      else if (down > 0.0) worst_lower = std::numeric_limits<double>::infinity();
      f2 += g[j] * g[j];
      f2s += gs[j] * gs[j];
    }
    c.at_most("column_norms.upper", worst_upper, 1.0, "gamma_j / (gamma_j^sk/sqrt(1-eps))");
    c.at_most("column_norms.lower", worst_lower, 1.0, "(gamma_j^sk/sqrt(1+eps)) / gamma_j");
    const double fr = std::sqrt(f2);
    const double frs = std::sqrt(f2s);
    c.at_most("frobenius.upper", fr, frs / std::sqrt(1.0 - eps) + floor, "|R22^sk|_F/sqrt(1-eps)");
    c.at_least("frobenius.lower", fr, frs / std::sqrt(1.0 + eps) - floor, "|R22^sk|_F/sqrt(1+eps)");
    if (config.algo == Algo::RandTol) {
      c.at_most("tolerance", max_of(g), *config.tau / std::sqrt(1.0 - eps) * (1.0 + kRatioSlack) + floor,
                "tau/sqrt(1-eps)");
    }
  }
}

}  // namespace

bool VerifyReport::ok() const noexcept { return violations() == 0; }

std::size_t VerifyReport::violations() const noexcept {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

VerifyReport verify(const RunConfig& config, const Matrix& m) {
  config.validate();
  const Vector sigma = singular_values(m);
  const auto seeds = detail::effective_seeds(config);
  std::vector<std::vector<Check>> per_seed(seeds.size());

  detail::parallel_for(seeds.size(), [&](std::size_t s) {
    const std::uint64_t seed = seeds[s];
    const detail::Outcome out = detail::execute(config, m, seed);
    Collector c;
    if (config.randomized()) c.prefix = "seed " + std::to_string(seed) + ": ";
    if (out.randomized) {
      const RandSrrqrResult& res = *out.randomized;
      const RatioReport rep = ratio_report(sigma, res);
      const bool finite = std::isfinite(res.f_tilde);
      if (finite) {
        factorization_checks(c, m, res.factorization, rep, res.f_tilde, kRandRhoSlack, "f~");
      } else {
        c.checks.push_back({c.prefix + "f~", res.distortion, 1.0, true, "skipped bound checks: distortion >= 1"});
        c.at_least("interlacing.leading", min_of(rep.leading_ratios), 1.0 - kRatioSlack);
        c.at_least("interlacing.trailing", min_of(defined(rep.trailing_ratios)), 1.0 - kRatioSlack);
      }
      sketch_checks(c, m, res, config, seed);
    } else {
      const RatioReport rep = ratio_report(sigma, out.factorization, config.f);
      factorization_checks(c, m, out.factorization, rep, config.f, kRatioSlack, "f");
      if (config.algo == Algo::Srrqr && config.tau && out.factorization.k() < std::min(m.rows(), m.cols())) {
        c.at_most("tolerance", max_of(column_norms(out.factorization.r22())), *config.tau, "max gamma_j(R22) < tau");
      }
    }
    per_seed[s] = std::move(c.checks);
  });

  VerifyReport report;
  for (auto& v : per_seed) report.checks.insert(report.checks.end(), v.begin(), v.end());
  return report;
}

VerifyReport verify(const RunConfig& config) {
  config.validate();
  return verify(config, config.matrix.load());
}

void print_report(std::ostream& out, const VerifyReport& report) {
  char buf[512];
  for (const Check& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%-40s measured=%-14.8g limit=%-14.8g %s", c.name.c_str(), c.measured, c.limit,
                  c.passed ? "PASS" : "FAIL");
    out << buf;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  out << (report.ok() ? "OK" : "VIOLATIONS") << ": " << report.checks.size() - report.violations() << " passed, "
      << report.violations() << " failed\n";
}

}  // namespace spectra::bench
