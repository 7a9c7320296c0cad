#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ddtm/rng.hpp"

namespace ddtm {

using NodeId = std::uint32_t;

/// Which degree side follows the power law. The other side is capped at a
/// fixed degree.
enum class Side { out, in };

std::string_view to_string(Side side) noexcept;
Side parse_side(std::string_view text);

/// Per-node degree targets for the power-law side plus the fixed degree of
/// the other side.
struct DegreeTargets {
    NodeId n = 0;
    Side variable_side = Side::out;
    std::vector<std::uint32_t> targets;
    std::uint32_t fixed_degree = 0;
    double gamma = 3.0;
};

inline constexpr double kDefaultGamma = 3.0;

/// max(floor, round(sqrt(n) * u^gamma)) for a given uniform draw u in (0, 1].
std::uint32_t power_law_target(NodeId n, double gamma, double u, std::uint32_t floor = 1);

/// Draws one target per node from sqrt(n) * u^gamma with u ~ U(0, 1].
DegreeTargets sample_degree_targets(NodeId n, double gamma, Side variable_side,
                                    std::uint32_t fixed_degree, Rng& rng,
                                    std::uint32_t floor = 1);

struct Neighbor {
    NodeId node;
    std::uint32_t multiplicity;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Directed multigraph in compressed adjacency form. Parallel edges are
/// folded into a multiplicity on a unique ordered pair. Immutable once
/// built; safe to share across threads.
class Network {
public:
    Network() = default;

    /// Builds from an edge list of (source, target) pairs; repeats
    /// accumulate as multiplicity. Self-loops are rejected.
    static Network from_edges(NodeId n, Side variable_side,
                              std::span<const std::pair<NodeId, NodeId>> edges);

    NodeId size() const noexcept { return n_; }
    Side variable_side() const noexcept { return variable_side_; }

    std::span<const Neighbor> out_neighbors(NodeId i) const noexcept {
        return {out_.data() + out_offsets_[i], out_.data() + out_offsets_[i + 1]};
    }
    std::span<const Neighbor> in_neighbors(NodeId i) const noexcept {
        return {in_.data() + in_offsets_[i], in_.data() + in_offsets_[i + 1]};
    }

    std::uint32_t out_degree(NodeId i) const noexcept { return out_degree_[i]; }
    std::uint32_t in_degree(NodeId i) const noexcept { return in_degree_[i]; }
    std::span<const std::uint32_t> out_degrees() const noexcept { return out_degree_; }
    std::span<const std::uint32_t> in_degrees() const noexcept { return in_degree_; }
    std::span<const std::uint32_t> degrees(Side side) const noexcept {
        return side == Side::out ? out_degrees() : in_degrees();
    }

    /// Sum of multiplicities over all ordered pairs.
    std::uint64_t edge_count() const noexcept { return edge_count_; }

    /// Stubs dropped because a self-loop pairing survived repair.
    std::uint64_t discarded_stubs() const noexcept { return discarded_stubs_; }
    void set_discarded_stubs(std::uint64_t count) noexcept { discarded_stubs_ = count; }

    friend bool operator==(const Network&, const Network&) = default;

private:
    NodeId n_ = 0;
    Side variable_side_ = Side::out;
    std::vector<std::size_t> out_offsets_{0};
    std::vector<Neighbor> out_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<Neighbor> in_;
    std::vector<std::uint32_t> out_degree_;
    std::vector<std::uint32_t> in_degree_;
    std::uint64_t edge_count_ = 0;
    std::uint64_t discarded_stubs_ = 0;
};

/// Stub pairing in matching order, before multiplicities are folded.
/// Exposed for the repair-rule tests.
struct StubPairing {
    std::vector<NodeId> sources;
    std::vector<NodeId> targets;
};

/// Repairs self-loop positions in place. Repeatedly takes the first
/// position whose source equals its target and swaps its target with a
/// uniformly chosen other position, for at most `max_attempts` swaps.
/// Returns the number of self-loop positions left afterwards.
std::size_t repair_self_loops(StubPairing& pairing, std::uint64_t max_attempts, Rng& rng);

/// Configuration-model wiring. Each node gets `fixed_degree` stubs on the
/// fixed side and `targets[i]` stubs on the power-law side. Both stub lists
/// are shuffled and truncated to the shorter length, so the binding side is
/// saturated and the slack side contributes a uniform subset. Self-loops
/// are repaired with a budget of 100 * n swaps; any that remain are dropped
/// and counted in `Network::discarded_stubs()`.
Network build_network(const DegreeTargets& targets, Rng& rng);

/// The unrepaired pairing that `build_network` starts from, consuming the
/// same random draws.
StubPairing pair_stubs(const DegreeTargets& targets, Rng& rng);

struct SideStats {
    std::uint32_t min = 0;
    std::uint32_t max = 0;
    double mean = 0.0;
    /// histogram[d] = number of nodes with degree d on this side.
    std::vector<std::uint32_t> histogram;
};

struct NetworkStats {
    NodeId n = 0;
    std::uint64_t edges = 0;
    double mean_degree = 0.0;
    SideStats out;
    SideStats in;
};

NetworkStats network_stats(const Network& net);

struct NetworkMetadata {
    NodeId n = 0;
    double gamma = kDefaultGamma;
    Side variable_side = Side::out;
    std::uint32_t fixed_degree = 0;
    std::uint64_t seed = 0;
    std::uint64_t discarded_stubs = 0;
};

/// `source,target,multiplicity` with a header, 0-based ids, rows ordered by
/// source then target.
void write_edge_list(std::ostream& os, const Network& net);
void write_edge_list(const std::string& path, const Network& net);

/// Reads the format produced by `write_edge_list`.
Network read_edge_list(std::istream& is, NodeId n, Side variable_side);

/// JSON key/value sidecar describing how a network was generated.
void write_metadata(std::ostream& os, const NetworkMetadata& meta);
void write_metadata(const std::string& path, const NetworkMetadata& meta);
NetworkMetadata read_metadata(std::istream& is);

}  // namespace ddtm
