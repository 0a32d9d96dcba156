#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "spectra/errors.hpp"
#include "spectra/qr.hpp"
#include "spectra/testmat.hpp"

namespace spectra {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

Vector stairs_sigma(const DevilsStairsSpec& s) {
  Vector sigma(s.n);
  for (std::size_t i = 0; i < s.n; ++i) sigma[i] = std::pow(s.q, static_cast<double>(i / s.stair_len));
  return sigma;
}

Vector stewart_sigma(const StewartSpec& s) {
  Vector sigma(s.n, 0.0);
  for (std::size_t i = 0; i <= s.n / 2 && i < s.n; ++i) sigma[i] = std::pow(s.q, static_cast<double>(i));
  return sigma;
}

Vector hc_sigma(const HcSpec& s) {
  Vector sigma(s.n);
  sigma[0] = 100.0;
  sigma[1] = 10.0;
  const std::size_t tail = s.n - 2;
  for (std::size_t t = 0; t < tail; ++t) {
    const double frac = tail > 1 ? static_cast<double>(t) / static_cast<double>(tail - 1) : 0.0;
    sigma[2 + t] = std::pow(10.0, -2.0 - 12.0 * frac);
  }
  return sigma;
}

// U·diag(sigma)·Vᵀ with fresh Haar factors.
Matrix svd_product(std::size_t m, std::size_t n, const Vector& sigma, Rng& rng) {
  Matrix u = haar_orthonormal(m, n, rng);
  const Matrix v = haar_orthonormal(n, n, rng);
  for (std::size_t j = 0; j < n; ++j)
    for (double& x : u.col(j)) x *= sigma[j];
  return u * v.transposed();
}

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(std::string("matrix spec: ") + what);
}

void require_shape(std::size_t m, std::size_t n) {
  require(n >= 1, "n must be at least 1");
  require(m >= n, "m must be at least n");
}

}  // namespace

std::size_t MatrixSpec::rows() const {
  return std::visit(Overloaded{[](const KahanSpec& s) { return std::max(s.n, s.pad_to_m); },
                               [](const DiagonalSpec& s) { return std::max(s.values.size(), s.pad_to_m); },
                               [](const auto& s) { return s.m; }},
                    kind);
}

std::size_t MatrixSpec::cols() const {
  return std::visit(Overloaded{[](const DiagonalSpec& s) { return s.values.size(); }, [](const auto& s) { return s.n; }},
                    kind);
}

void MatrixSpec::validate() const {
  std::visit(Overloaded{
                 [](const KahanSpec& s) {
                   require(s.n >= 1, "n must be at least 1");
                   require(s.s > 0.0 && s.s < 1.0, "Kahan s must lie in (0, 1)");
                   require(s.pad_to_m == 0 || s.pad_to_m >= s.n, "Kahan padding must be at least n rows");
                 },
                 [](const DevilsStairsSpec& s) {
                   require_shape(s.m, s.n);
                   require(s.q > 0.0 && s.q < 1.0, "stairs q must lie in (0, 1)");
                   require(s.stair_len >= 1, "stair length must be at least 1");
                 },
                 [](const StewartSpec& s) {
                   require_shape(s.m, s.n);
                   require(s.q > 0.0 && s.q < 1.0, "Stewart q must lie in (0, 1)");
                 },
                 [](const HcSpec& s) {
                   require_shape(s.m, s.n);
                   require(s.n >= 3, "H-C needs n >= 3");
                 },
                 [](const SampledIdentitySpec& s) { require_shape(s.m, s.n); },
                 [](const GaussianSpec& s) { require_shape(s.m, s.n); },
                 [](const DiagonalSpec& s) {
                   require(!s.values.empty(), "diagonal needs at least one value");
                   for (double v : s.values) require(std::isfinite(v), "diagonal values must be finite");
                   require(s.pad_to_m == 0 || s.pad_to_m >= s.values.size(), "diagonal padding must be at least n rows");
                 },
             },
             kind);
}

Matrix haar_orthonormal(std::size_t m, std::size_t n, Rng& rng) {
  if (n == 0 || m < n) throw DomainError("haar_orthonormal: need 1 <= n <= m");
  // The reflector convention already yields a nonnegative R diagonal, which is
  // the sign normalization that makes Q Haar distributed.
  return partial_qr(gaussian_matrix(m, n, rng), n).thin_q();
}

Matrix generate(const MatrixSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  return std::visit(
      Overloaded{
          [](const KahanSpec& s) {
            const double c = std::sqrt(1.0 - s.s * s.s);
            Matrix k(std::max(s.n, s.pad_to_m), s.n);
            for (std::size_t i = 0; i < s.n; ++i) {
              const double si = std::pow(s.s, static_cast<double>(i));
              k(i, i) = si;
              for (std::size_t j = i + 1; j < s.n; ++j) k(i, j) = -c * si;
            }
            return k;
          },
          [&rng](const DevilsStairsSpec& s) { return svd_product(s.m, s.n, stairs_sigma(s), rng); },
          [&rng](const StewartSpec& s) {
            Matrix m = svd_product(s.m, s.n, stewart_sigma(s), rng);
            const double c = std::pow(s.q, static_cast<double>(s.n) / 2.0);
            for (double& x : m.data()) x += c * rng.uniform();
            return m;
          },
          [&rng](const HcSpec& s) {
            Matrix u = haar_orthonormal(s.m, s.n, rng);
            const Vector sigma = hc_sigma(s);
            for (std::size_t j = 0; j < s.n; ++j)
              for (double& x : u.col(j)) x *= sigma[j];
            return u;
          },
          [&rng](const SampledIdentitySpec& s) {
            // Partial Fisher–Yates over the row indices.
            std::vector<std::size_t> idx(s.m);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            Matrix m(s.m, s.n);
            for (std::size_t j = 0; j < s.n; ++j) {
              std::swap(idx[j], idx[j + rng.below(s.m - j)]);
              m(idx[j], j) = 1.0;
            }
            return m;
          },
          [&rng](const GaussianSpec& s) { return gaussian_matrix(s.m, s.n, rng); },
          [](const DiagonalSpec& s) { return Matrix::diagonal(s.values, std::max(s.values.size(), s.pad_to_m)); },
      },
      spec.kind);
}

Vector prescribed_singular_values(const MatrixSpec& spec) {
  spec.validate();
  Vector sigma = std::visit(
      Overloaded{
          [](const DevilsStairsSpec& s) { return stairs_sigma(s); },
          [](const StewartSpec& s) { return stewart_sigma(s); },
          [](const HcSpec& s) { return hc_sigma(s); },
          [](const SampledIdentitySpec& s) { return Vector(s.n, 1.0); },
          [](const DiagonalSpec& s) {
            Vector v(s.values.size());
            std::transform(s.values.begin(), s.values.end(), v.begin(), [](double x) { return std::abs(x); });
            return v;
          },
          [](const auto&) -> Vector { throw DomainError("prescribed_singular_values: no closed form for this kind"); },
      },
      spec.kind);
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

}  // namespace spectra
