#include <algorithm>
#include <cmath>
#include <string>

#include "spectra/errors.hpp"
#include "spectra/srrqr.hpp"

namespace spectra {

namespace {

constexpr double kUnderflowGamma = 1e-300;

// Interchanges until no det_ratio exceeds f. Each accepted swap multiplies
// |det R11| by more than f.
void improve(SrrqrState& s, double f) {
  if (s.k() == 0 || s.trailing() == 0) return;
  while (auto candidate = s.find_interchange(f)) {
    if (s.swap_count() >= swap_cap(s.k(), s.cols(), f)) {
      throw ConvergenceError("srrqr: more than " + std::to_string(swap_cap(s.k(), s.cols(), f)) +
                             " interchanges at k = " + std::to_string(s.k()) + " (rho = " + std::to_string(s.rho()) +
                             ")");
    }
    s.interchange(candidate->first, candidate->second);
  }
}

}  // namespace

void SrrqrConfig::validate() const {
  if (!(f > 1.0) || !std::isfinite(f)) throw DomainError("srrqr: f must be a finite value > 1");
  if (const auto* t = std::get_if<TargetRank>(&mode)) {
    if (t->k < 1) throw DomainError("srrqr: target rank must be at least 1");
  } else {
    const double tau = std::get<Tolerance>(mode).tau;
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("srrqr: tolerance must be a finite value > 0");
  }
}

double det_ratio(const SrrqrState& s, std::size_t i, std::size_t j) { return s.det_ratio(i, j); }
double rho(const SrrqrState& s) { return s.rho(); }
double rho_hat(const SrrqrState& s) { return s.rho_hat(); }

SrrqrState interchange(SrrqrState s, std::size_t i, std::size_t j) {
  s.interchange(i, j);
  return s;
}

std::size_t swap_cap(std::size_t k, std::size_t n, double f) {
  const double logs = std::log(static_cast<double>(std::max<std::size_t>(n, 2))) / std::log(f);
  return static_cast<std::size_t>(std::ceil(10.0 * static_cast<double>(std::max<std::size_t>(k, 1)) * logs));
}

SrrqrState srrqr_select(const Matrix& m, const SrrqrConfig& config) {
  config.validate();
  SrrqrState s(m, config.recompute_maintained);
  const std::size_t limit = std::min(m.rows(), m.cols());

  if (const auto* t = std::get_if<TargetRank>(&config.mode)) {
    if (t->k > limit) {
      throw DomainError("srrqr: target rank " + std::to_string(t->k) + " exceeds min(rows, cols) = " +
                        std::to_string(limit));
    }
    while (s.k() < t->k) {
      if (s.max_gamma() < kUnderflowGamma) {
        throw SingularityError("srrqr: trailing block vanished at step " + std::to_string(s.k() + 1) +
                                   " before reaching rank " + std::to_string(t->k),
                               s.k());
      }
      s.advance();
      improve(s, config.f);
    }
  } else {
    const double tau = std::get<Tolerance>(config.mode).tau;
    while (s.k() < limit && s.max_gamma() >= tau) {
      s.advance();
      improve(s, config.f);
    }
  }
  return s;
}

SrrqrResult srrqr(const Matrix& m, const SrrqrConfig& config) {
  const SrrqrState s = srrqr_select(m, config);
  return SrrqrResult{partial_qr(m, s.k(), s.perm()), s.k(), s.rho(), s.swap_count()};
}

PartialQR qrcp(const Matrix& m, std::size_t k) { return column_pivoted_qr(m, k); }

}  // namespace spectra
