#pragma once

// Straightforward serial versions of the dynamics kernels. Nothing here is
// incremental: every query rescans the network. Used as test oracles and
// as the baseline in the benchmark.

#include <cstdint>
#include <span>
#include <vector>

#include "ddtm/dynamics.hpp"

namespace ddtm::reference {

/// All flip-eligible nodes in ascending id order, by full scan.
std::vector<NodeId> unstable_nodes(const Network& net, const ThresholdAssignment& th,
                                   std::span<const Opinion> s);

bool is_fixed_point(const Network& net, const ThresholdAssignment& th, std::span<const Opinion> s);

/// Same random draws and update rule as ddtm::run_to_fixation, with the
/// stopping test done by full rescan after every attempt.
RunResult run_to_fixation(const Network& net, const ThresholdAssignment& th, double p, Rng& rng,
                          std::uint64_t max_attempts);

}  // namespace ddtm::reference
