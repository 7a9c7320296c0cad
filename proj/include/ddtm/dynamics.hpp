#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ddtm/netgen.hpp"
#include "ddtm/rng.hpp"
#include "ddtm/thresholds.hpp"

namespace ddtm {

using Opinion = std::uint8_t;

/// Multiplicity-weighted mean opinion of i's in-neighbors, or nullopt when
/// i has no in-neighbors.
std::optional<double> weighted_in_average(const Network& net, std::span<const Opinion> s, NodeId i);

/// 0 -> 1 when o_bar > phi; 1 -> 0 when o_bar < 1 - phi. Both strict. An
/// undefined average never flips.
constexpr bool flip_eligible(Opinion s_i, std::optional<double> o_bar, double phi_i) noexcept {
    if (!o_bar) return false;
    return s_i == 0 ? (*o_bar - 0.0 > phi_i) : (*o_bar - 1.0 < -phi_i);
}

struct StepOutcome {
    NodeId node;
    bool flipped;
};

/// Opinions plus the incrementally maintained set of flip-eligible nodes.
class OpinionState {
public:
    OpinionState(const Network& net, const ThresholdAssignment& th, std::vector<Opinion> s);

    std::span<const Opinion> opinions() const noexcept { return s_; }
    std::span<const NodeId> unstable() const noexcept { return unstable_; }
    bool is_unstable(NodeId i) const noexcept { return slot_[i] != kAbsent; }
    bool fixated() const noexcept { return unstable_.empty(); }

    std::uint64_t clock() const noexcept { return clock_; }
    std::uint64_t flips() const noexcept { return flips_; }
    std::uint32_t ones() const noexcept { return ones_; }

    /// Update attempt on a given node: advances the clock, flips the node
    /// if eligible, and refreshes the node and its out-neighbors.
    StepOutcome attempt(NodeId i, const Network& net, const ThresholdAssignment& th);

private:
    static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

    bool eligible(NodeId i, const Network& net, const ThresholdAssignment& th) const noexcept;
    void refresh(NodeId i, const Network& net, const ThresholdAssignment& th);

    std::vector<Opinion> s_;
    std::vector<std::uint32_t> ones_weight_;  // weighted count of 1-valued in-neighbors
    std::vector<NodeId> unstable_;
    std::vector<std::uint32_t> slot_;  // index into unstable_, or kAbsent
    std::uint64_t clock_ = 0;
    std::uint64_t flips_ = 0;
    std::uint32_t ones_ = 0;
};

/// Independent Bernoulli(p) opinions, drawn in node order.
std::vector<Opinion> bernoulli_opinions(NodeId n, double p, Rng& rng);

OpinionState init_opinions(const Network& net, const ThresholdAssignment& th, double p, Rng& rng);

/// One asynchronous update attempt on a uniformly chosen node. Throws
/// ContractViolation if the state is already fixated.
StepOutcome step(const Network& net, OpinionState& state, const ThresholdAssignment& th, Rng& rng);

struct RunResult {
    std::vector<Opinion> final_state;
    std::uint64_t t_f = 0;  // update attempts
    double t_f_sweeps = 0.0;
    bool fixated = false;
    std::uint64_t flips = 0;
};

inline constexpr std::uint64_t kDefaultAttemptsPerNode = 5000;

inline std::uint64_t default_max_attempts(NodeId n) noexcept {
    return kDefaultAttemptsPerNode * n;
}

/// Steps until no node is flip-eligible or `max_attempts` is reached. With
/// `trace` set, writes `attempt,node,flipped,ones_count` per attempt.
RunResult run_to_fixation(const Network& net, const ThresholdAssignment& th, double p, Rng& rng,
                          std::uint64_t max_attempts, std::ostream* trace = nullptr);

RunResult run_from_state(const Network& net, const ThresholdAssignment& th, OpinionState state,
                         Rng& rng, std::uint64_t max_attempts, std::ostream* trace = nullptr);

void write_trace_header(std::ostream& os);

/// Fraction of nodes holding opinion 1.
double average_opinion(std::span<const Opinion> s);

}  // namespace ddtm
