#pragma once

#include <functional>
#include <optional>

#include "spectra/bench.hpp"

namespace spectra::bench::detail {

struct Outcome {
  PartialQR factorization;
  std::optional<RandSrrqrResult> randomized;
  std::size_t swap_count = 0;
  double total_ms = 0.0;
};

RandSrrqrOptions rand_options(const RunConfig& config, std::uint64_t seed);

/// Runs the configured algorithm once.
Outcome execute(const RunConfig& config, const Matrix& m, std::uint64_t seed);

/// Seeds to run: all of them for randomized algorithms, the first one otherwise.
std::vector<std::uint64_t> effective_seeds(const RunConfig& config);

/// Calls job(i) for i in [0, count) on up to worker_count(count) threads.
/// The first exception (in index order) is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job);

}  // namespace spectra::bench::detail
