#pragma once

#include <cstdint>
#include <random>

namespace ddtm {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for run `run` of grid point `grid` under `master`. Distinct
/// (grid, run) pairs map to distinct seeds for a fixed master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t grid, std::uint64_t run) noexcept;

/// Uniform draw on (0, 1].
double uniform_open_closed(Rng& rng);

/// Uniform integer on [0, n).
std::uint32_t uniform_index(Rng& rng, std::uint32_t n);

}  // namespace ddtm
