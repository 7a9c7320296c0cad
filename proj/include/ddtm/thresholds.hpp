#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ddtm/netgen.hpp"

namespace ddtm {

/// Which end of the degree ordering receives rank 1 (and so the lowest
/// threshold level).
enum class RankOrder { ascending, descending };

std::string_view to_string(RankOrder order) noexcept;
RankOrder parse_rank_order(std::string_view text);

/// Per-node thresholds drawn from `n_th` evenly spaced levels on [0.5, 1],
/// assigned by degree rank: rank 1 gets 0.5, rank n gets 1.
struct ThresholdAssignment {
    std::vector<double> phi;
    std::vector<std::uint32_t> rank;  // 1-based
    std::uint32_t n_th = 1;
    Side ranked_side = Side::out;
    RankOrder order = RankOrder::ascending;
};

/// Ascending: rank 1 is the lowest degree. Descending: rank 1 is the
/// highest. Ties always go to the smaller node id first.
std::vector<std::uint32_t> rank_by_degree(std::span<const std::uint32_t> degrees,
                                          RankOrder order);
std::vector<std::uint32_t> rank_by_degree(const Network& net, Side side,
                                          RankOrder order);

/// 1-based group of rank r: ceil(r * n_th / n).
std::uint32_t threshold_group(std::uint32_t rank, std::uint32_t n, std::uint32_t n_th) noexcept;

/// 0.5 + 0.5 * (g - 1) / (n_th - 1); 0.75 when n_th == 1.
double threshold_level(std::uint32_t group, std::uint32_t n_th) noexcept;

ThresholdAssignment assign_thresholds(std::span<const std::uint32_t> rank, std::uint32_t n,
                                      std::uint32_t n_th);

/// Ranks by the network's power-law side and assigns levels.
ThresholdAssignment degree_dependent_thresholds(const Network& net, std::uint32_t n_th,
                                                RankOrder order);

/// `node,degree,rank,phi` audit table.
void write_threshold_table(std::ostream& os, const Network& net, const ThresholdAssignment& th);
void write_threshold_table(const std::string& path, const Network& net,
                           const ThresholdAssignment& th);

}  // namespace ddtm
