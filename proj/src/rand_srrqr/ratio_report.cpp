#include <algorithm>
#include <cmath>
#include <functional>

#include "spectra/errors.hpp"
#include "spectra/geometry.hpp"
#include "spectra/rand_srrqr.hpp"
#include "spectra/svd.hpp"

namespace spectra {

namespace {

constexpr double kUndefinedRelative = 1e-13;

}  // namespace

double ratio_bound(double f, std::size_t k, std::size_t n) {
  return std::sqrt(1.0 + f * f * static_cast<double>(k) * static_cast<double>(n - k));
}

RatioReport ratio_report(std::span<const double> sigma_m, const PartialQR& fact, double f_bound) {
  const std::size_t m = fact.rows();
  const std::size_t n = fact.cols();
  const std::size_t k = fact.k();
  if (sigma_m.size() != std::min(m, n)) throw DimensionError("ratio_report: singular value count mismatch");

  RatioReport rep;
  rep.k = k;
  rep.n = n;
  rep.f_bound = f_bound;
  rep.bound = ratio_bound(f_bound, k, n);
  if (k == 0) return rep;

  const Matrix r11 = fact.r11();
  const Vector s11 = singular_values(r11);
  rep.leading_ratios.resize(k);
  for (std::size_t i = 0; i < k; ++i) rep.leading_ratios[i] = sigma_m[i] / s11[i];

  if (k < n) {
    const Matrix a = solve_upper(r11, fact.r12());
    rep.a_max = a.max_abs();
  }
  if (k < std::min(m, n)) {
    const Vector s22 = singular_values(fact.r22());
    const double floor = kUndefinedRelative * sigma_m[0];
    rep.trailing_ratios.resize(std::min(m, n) - k);
    for (std::size_t j = 0; j < rep.trailing_ratios.size(); ++j) {
      const double denom = sigma_m[j + k];
      if (denom > floor) rep.trailing_ratios[j] = s22[j] / denom;
    }
  }
  return rep;
}

RatioReport ratio_report(const Matrix& m, const PartialQR& fact, double f_bound) {
  const Vector sigma = singular_values(m);
  return ratio_report(sigma, fact, f_bound);
}

RatioReport ratio_report(const Matrix& m, const RandSrrqrResult& res) {
  return ratio_report(m, res.factorization, res.f_tilde);
}

RatioReport ratio_report(std::span<const double> sigma_m, const RandSrrqrResult& res) {
  return ratio_report(sigma_m, res.factorization, res.f_tilde);
}

QlpResult qlp_values(const PartialQR& fact) {
  const std::size_t k = fact.k();
  if (k == 0) throw DomainError("qlp_values: empty leading block");
  QlpResult out;
  const Matrix top_t = fact.r_top().transposed();
  const PartialQR second = partial_qr(top_t, k);
  out.l_values.resize(k);
  out.r_values.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.l_values[i] = std::abs(second.r()(i, i));
    out.r_values[i] = std::abs(fact.r()(i, i));
  }
  out.l_values_sorted = out.l_values;
  std::sort(out.l_values_sorted.begin(), out.l_values_sorted.end(), std::greater<>());
  return out;
}

QlpResult qlp_values(const RandSrrqrResult& res) { return qlp_values(res.factorization); }

}  // namespace spectra
