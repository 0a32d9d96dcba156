#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <json.hpp>

#include "spectra/errors.hpp"
#include "spectra/random.hpp"
#include "spectra/sketch.hpp"

namespace spectra {

namespace {

constexpr std::size_t kGaussianBlockRows = 32;

void check_shape(std::size_t d, std::size_t m) {
  if (m == 0 || d == 0) throw DomainError("sketch: dimensions must be positive");
  if (d > m) throw DomainError("sketch: d = " + std::to_string(d) + " exceeds m = " + std::to_string(m));
}

}  // namespace

std::string to_string(SketchKind kind) {
  switch (kind) {
    case SketchKind::Gaussian:
      return "gaussian";
    case SketchKind::Srht:
      return "srht";
    case SketchKind::Identity:
      return "identity";
  }
  return "unknown";
}

SketchKind parse_sketch_kind(std::string_view name) {
  if (name == "gaussian") return SketchKind::Gaussian;
  if (name == "srht") return SketchKind::Srht;
  if (name == "identity") return SketchKind::Identity;
  throw DomainError("unknown sketch kind '" + std::string(name) + "'");
}

std::size_t sketch_input_rows(SketchKind kind, std::size_t m) noexcept {
  return kind == SketchKind::Srht ? next_power_of_two(m) : m;
}

SketchOperator SketchOperator::gaussian(std::size_t d, std::size_t m, std::uint64_t seed) {
  check_shape(d, m);
  SketchOperator op;
  op.kind_ = SketchKind::Gaussian;
  op.d_ = d;
  op.m_ = m;
  op.seed_ = seed;
  return op;
}

SketchOperator SketchOperator::srht(std::size_t d, std::size_t m, std::uint64_t seed) {
  check_shape(d, m);
  if (!is_power_of_two(m)) throw DomainError("srht: m = " + std::to_string(m) + " is not a power of two (pad first)");
  SketchOperator op;
  op.kind_ = SketchKind::Srht;
  op.d_ = d;
  op.m_ = m;
  op.seed_ = seed;
  Rng rng(seed);
  op.signs_.resize(m);
  for (double& s : op.signs_) s = (rng.next() >> 63) ? -1.0 : 1.0;
  op.samples_.resize(d);
  for (std::size_t& s : op.samples_) s = rng.below(m);
  return op;
}

SketchOperator SketchOperator::identity(std::size_t m) {
  check_shape(m, m);
  SketchOperator op;
  op.kind_ = SketchKind::Identity;
  op.d_ = m;
  op.m_ = m;
  return op;
}

SketchOperator SketchOperator::make(SketchKind kind, std::size_t d, std::size_t m, std::uint64_t seed) {
  switch (kind) {
    case SketchKind::Gaussian:
      return gaussian(d, m, seed);
    case SketchKind::Srht:
      return srht(d, m, seed);
    case SketchKind::Identity:
      if (d != m) throw DomainError("identity sketch requires d = m");
      return identity(m);
  }
  throw DomainError("unknown sketch kind");
}

double SketchOperator::gaussian_entry(std::size_t r, std::size_t i) const noexcept {
  const std::uint64_t h1 = splitmix64(splitmix64(seed_) + static_cast<std::uint64_t>(r) * m_ + i);
  const std::uint64_t h2 = splitmix64(h1 ^ 0xd1b54a32d192ed03ULL);
  const double u1 = bits_to_open_unit(h1);
  const double u2 = bits_to_open_unit(h2);
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return z / std::sqrt(static_cast<double>(d_));
}

Matrix SketchOperator::apply(const Matrix& x) const {
  if (x.rows() != m_) {
    throw DimensionError("sketch apply: input has " + std::to_string(x.rows()) + " rows, operator expects " +
                         std::to_string(m_));
  }
  switch (kind_) {
    case SketchKind::Gaussian:
      return apply_gaussian(x);
    case SketchKind::Srht:
      return apply_srht(x);
    case SketchKind::Identity:
      return x;
  }
  return x;
}

Vector SketchOperator::apply(std::span<const double> x) const {
  const Matrix out = apply(Matrix::column(x));
  return Vector(out.data().begin(), out.data().end());
}

Matrix SketchOperator::apply_gaussian(const Matrix& x) const {
  Matrix out(d_, x.cols());
  // Row block of Ω, stored row-major so each row is contiguous.
  std::vector<double> block(kGaussianBlockRows * m_);
  for (std::size_t r0 = 0; r0 < d_; r0 += kGaussianBlockRows) {
    const std::size_t nb = std::min(kGaussianBlockRows, d_ - r0);
    for (std::size_t r = 0; r < nb; ++r)
      for (std::size_t i = 0; i < m_; ++i) block[r * m_ + i] = gaussian_entry(r0 + r, i);
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const auto xc = x.col(c);
      for (std::size_t r = 0; r < nb; ++r)
        out(r0 + r, c) = dot(std::span<const double>(block.data() + r * m_, m_), xc);
    }
  }
  return out;
}

Matrix SketchOperator::apply_srht(const Matrix& x) const {
  Matrix out(d_, x.cols());
  // √(m/d)·(1/√m) from the orthonormal Hadamard normalization.
  const double scale = 1.0 / std::sqrt(static_cast<double>(d_));
  Vector work(m_);
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const auto xc = x.col(c);
    for (std::size_t i = 0; i < m_; ++i) work[i] = signs_[i] * xc[i];
    fwht_inplace(work);
    for (std::size_t r = 0; r < d_; ++r) out(r, c) = scale * work[samples_[r]];
  }
  return out;
}

Matrix SketchOperator::dense() const { return apply(Matrix::identity(m_)); }

std::string SketchOperator::to_json() const {
  nlohmann::json j{{"kind", to_string(kind_)}, {"d", d_}, {"m", m_}, {"seed", seed_}};
  return j.dump();
}

SketchOperator SketchOperator::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    return make(parse_sketch_kind(j.at("kind").get<std::string>()), j.at("d").get<std::size_t>(),
                j.at("m").get<std::size_t>(), j.value("seed", std::uint64_t{0}));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("sketch operator JSON: ") + e.what());
  }
}

}  // namespace spectra
