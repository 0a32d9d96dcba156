#include "spectra/permutation.hpp"

#include <numeric>

#include "spectra/errors.hpp"

namespace spectra {

Permutation::Permutation(std::size_t n) : forward_(n) {
  std::iota(forward_.begin(), forward_.end(), std::size_t{0});
}

Permutation Permutation::from_forward(std::vector<std::size_t> forward) {
  Permutation target;
  target.forward_ = std::move(forward);
  if (!target.is_bijection()) throw DomainError("permutation: forward map is not a bijection");

  // Selection sort from the identity reproduces the map with at most n-1 swaps.
  Permutation p(target.size());
  auto where = p.inverse();
  for (std::size_t pos = 0; pos < p.size(); ++pos) {
    const std::size_t want = target.forward_[pos];
    const std::size_t at = where[want];
    if (at != pos) {
      where[p.forward_[pos]] = at;
      where[want] = pos;
      p.swap(pos, at);
    }
  }
  return p;
}

Permutation Permutation::replay(std::size_t n, const std::vector<Transposition>& log) {
  Permutation p(n);
  for (const auto& [i, j] : log) p.swap(i, j);
  return p;
}

void Permutation::swap(std::size_t i, std::size_t j) {
  if (i >= size() || j >= size()) throw DimensionError("permutation swap: index out of range");
  if (i == j) return;
  std::swap(forward_[i], forward_[j]);
  log_.emplace_back(i, j);
}

void Permutation::rotate_left(std::size_t from, std::size_t to) {
  for (std::size_t p = from; p < to; ++p) swap(p, p + 1);
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t p = 0; p < forward_.size(); ++p)
    if (forward_[p] != p) return false;
  return true;
}

bool Permutation::is_bijection() const noexcept {
  std::vector<bool> seen(forward_.size(), false);
  for (std::size_t v : forward_) {
    if (v >= forward_.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Matrix Permutation::apply(const Matrix& m) const {
  if (m.cols() != size()) throw DimensionError("permutation apply: column count mismatch");
  return m.select_columns(forward_);
}

std::vector<std::size_t> Permutation::inverse() const {
  std::vector<std::size_t> inv(forward_.size());
  for (std::size_t p = 0; p < forward_.size(); ++p) inv[forward_[p]] = p;
  return inv;
}

}  // namespace spectra
