#include <string>

#include "spectra/errors.hpp"
#include "spectra/sketch.hpp"

namespace spectra {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fwht_inplace(std::span<double> v) {
  const std::size_t n = v.size();
  if (!is_power_of_two(n)) throw DomainError("fwht: length " + std::to_string(n) + " is not a power of two");
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t base = 0; base < n; base += 2 * h) {
      for (std::size_t i = base; i < base + h; ++i) {
        const double a = v[i];
        const double b = v[i + h];
        v[i] = a + b;
        v[i + h] = a - b;
      }
    }
  }
}

Vector fwht(std::span<const double> v) {
  Vector out(v.begin(), v.end());
  fwht_inplace(out);
  return out;
}

}  // namespace spectra
