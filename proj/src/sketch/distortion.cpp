#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spectra/errors.hpp"
#include "spectra/sketch.hpp"
#include "spectra/svd.hpp"

namespace spectra {

double embedding_distortion_of_sketch(const Matrix& sketched_basis) {
  if (sketched_basis.empty()) throw DomainError("embedding_distortion: empty basis");
  if (sketched_basis.rows() < sketched_basis.cols()) return 1.0;
  const Vector sigma = singular_values(sketched_basis);
  const double smax = sigma.front();
  const double smin = sigma.back();
  return std::max(1.0 - smin * smin, smax * smax - 1.0);
}

double embedding_distortion(const SketchOperator& op, const Matrix& basis) {
  if (basis.empty()) throw DomainError("embedding_distortion: empty basis");
  const Matrix gram = transpose_times(basis, basis);
  for (std::size_t j = 0; j < gram.cols(); ++j) {
    for (std::size_t i = 0; i < gram.rows(); ++i) {
      const double want = i == j ? 1.0 : 0.0;
      if (std::abs(gram(i, j) - want) > 1e-10) throw DomainError("embedding_distortion: basis is not orthonormal");
    }
  }
  if (op.d() < basis.cols()) return 1.0;
  return embedding_distortion_of_sketch(op.apply(basis));
}

void SketchConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("sketch config: epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("sketch config: delta must lie in (0, 1)");
  if (subspace_dim == 0 || m == 0) throw DomainError("sketch config: dimensions must be positive");
  if (!(constant > 0.0)) throw DomainError("sketch config: constant must be positive");
}

std::size_t ose_dim(const SketchConfig& cfg) {
  cfg.validate();
  const double n = static_cast<double>(cfg.subspace_dim);
  const double m = static_cast<double>(cfg.m);
  double raw = 0.0;
  if (cfg.policy == OsePolicy::Experimental) {
    // n = 1 gives ln(n) = 0 and an infinite estimate, which the clamp turns into m.
    raw = cfg.subspace_dim > 1 ? std::floor(3.0 * n * std::log(m) / std::log(n)) : std::numeric_limits<double>::infinity();
  } else if (cfg.kind == SketchKind::Srht) {
    raw = std::ceil(cfg.constant / (cfg.epsilon * cfg.epsilon) * (n + std::log(m / cfg.delta)) * std::log(n / cfg.delta));
  } else {
    raw = std::ceil(cfg.constant / (cfg.epsilon * cfg.epsilon) * (n + std::log(1.0 / cfg.delta)));
  }
  if (cfg.subspace_dim >= cfg.m) return cfg.m;
  const double lo = n + 1.0;
  const double clamped = std::clamp(raw, lo, m);
  return static_cast<std::size_t>(clamped);
}

std::size_t ose_dim(std::size_t subspace_dim, std::size_t m) {
  SketchConfig cfg;
  cfg.subspace_dim = subspace_dim;
  cfg.m = m;
  return ose_dim(cfg);
}

}  // namespace spectra
