#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spectra {

/// Invalid argument values: out-of-range ranks, non-finite entries, bad parameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operand shapes that do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A triangular factor or trailing block turned out to be (numerically) singular.
/// `index` is the zero-based diagonal position or factorization step that failed.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// An iteration exceeded its hard cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spectra
