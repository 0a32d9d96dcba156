#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spectra/matrix.hpp"

namespace spectra {

/// Column permutation Π recorded both as a forward map and as the ordered list
/// of transpositions that produced it.
///
/// `(*this)[p]` is the index of the original column that sits at position `p`
/// of M·Π. All indices are zero-based.
class Permutation {
 public:
  using Transposition = std::pair<std::size_t, std::size_t>;

  Permutation() = default;
  explicit Permutation(std::size_t n);

  /// Builds from an explicit forward map; throws DomainError unless it is a bijection.
  /// The transposition log is reconstructed (selection order).
  static Permutation from_forward(std::vector<std::size_t> forward);

  /// Replays a transposition log starting from the identity.
  static Permutation replay(std::size_t n, const std::vector<Transposition>& log);

  std::size_t size() const noexcept { return forward_.size(); }
  std::size_t operator[](std::size_t position) const noexcept { return forward_[position]; }

  const std::vector<std::size_t>& forward() const noexcept { return forward_; }
  const std::vector<Transposition>& transpositions() const noexcept { return log_; }

  /// Interchanges positions i and j (Π := Π·Π_{i,j}); no-op when i == j.
  void swap(std::size_t i, std::size_t j);

  /// Moves the entry at position `from` to position `to` (> from), shifting the
  /// entries in between one step left. Logged as adjacent transpositions.
  void rotate_left(std::size_t from, std::size_t to);

  bool is_identity() const noexcept;
  bool is_bijection() const noexcept;

  /// M·Π: column p of the result is column (*this)[p] of m.
  Matrix apply(const Matrix& m) const;

  /// Inverse map: position of each original column.
  std::vector<std::size_t> inverse() const;

  friend bool operator==(const Permutation& a, const Permutation& b) noexcept {
    return a.forward_ == b.forward_;
  }

 private:
  std::vector<std::size_t> forward_;
  std::vector<Transposition> log_;
};

}  // namespace spectra
