#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ddtm/experiments.hpp"

namespace ddtm {

/// A set of sweeps: the Cartesian product of the listed regimes, node
/// counts, fixed degrees and group counts, all sharing the remaining
/// fields of `base`.
struct SweepPlan {
    SweepConfig base;
    std::vector<Regime> regimes{Regime::out_dependent, Regime::in_dependent};
    std::vector<NodeId> node_counts{1000};
    std::vector<std::uint32_t> fixed_degrees{15};
    std::vector<std::uint32_t> group_counts{10};

    /// Ordered regime-major, then n, fixed degree, n_th.
    std::vector<SweepConfig> expand() const;
};

/// Parses `key = value` lines; `#` starts a comment. Keys: regime, n,
/// fixed_degree, n_th (each a comma list), gamma, p_grid (comma list or
/// start:step:stop), runs, master_seed (alias seed), max_attempts,
/// fresh_network_per_run, rank_order. Unknown keys are errors.
SweepPlan parse_plan(std::istream& is);
SweepPlan load_plan(const std::string& path);

/// "0.1,0.5" or "0:0.05:1" (stop inclusive).
std::vector<double> parse_p_grid(std::string_view text);

}  // namespace ddtm
