#include "ddtm/thresholds.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>

#include "ddtm/error.hpp"
#include "ddtm/format.hpp"

namespace ddtm {

std::string_view to_string(RankOrder order) noexcept {
    return order == RankOrder::ascending ? "ascending" : "descending";
}

RankOrder parse_rank_order(std::string_view text) {
    if (text == "ascending") return RankOrder::ascending;
    if (text == "descending") return RankOrder::descending;
    throw ParameterError("rank order must be ascending or descending, got '" + std::string(text) + "'");
}

std::vector<std::uint32_t> rank_by_degree(std::span<const std::uint32_t> degrees, RankOrder order) {
    std::vector<std::uint32_t> sorted(degrees.size());
    std::iota(sorted.begin(), sorted.end(), 0u);
    if (order == RankOrder::ascending)
        std::stable_sort(sorted.begin(), sorted.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return degrees[a] < degrees[b]; });
    else
        std::stable_sort(sorted.begin(), sorted.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return degrees[a] > degrees[b]; });
    std::vector<std::uint32_t> rank(degrees.size());
    for (std::size_t pos = 0; pos < sorted.size(); ++pos)
        rank[sorted[pos]] = static_cast<std::uint32_t>(pos + 1);
    return rank;
}

std::vector<std::uint32_t> rank_by_degree(const Network& net, Side side, RankOrder order) {
    return rank_by_degree(net.degrees(side), order);
}

std::uint32_t threshold_group(std::uint32_t rank, std::uint32_t n, std::uint32_t n_th) noexcept {
    const std::uint64_t num = std::uint64_t{rank} * n_th;
    return static_cast<std::uint32_t>((num + n - 1) / n);
}

double threshold_level(std::uint32_t group, std::uint32_t n_th) noexcept {
    if (n_th <= 1) return 0.75;
    return 0.5 + 0.5 * static_cast<double>(group - 1) / static_cast<double>(n_th - 1);
}

ThresholdAssignment assign_thresholds(std::span<const std::uint32_t> rank, std::uint32_t n,
                                      std::uint32_t n_th) {
    if (n == 0 || rank.size() != n) throw ParameterError("rank length must equal node count");
    if (n_th < 1 || n_th > n)
        throw ParameterError("threshold group count must lie in [1, n], got " + std::to_string(n_th));

    ThresholdAssignment th;
    th.n_th = n_th;
    th.rank.assign(rank.begin(), rank.end());
    th.phi.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (rank[i] < 1 || rank[i] > n) throw ParameterError("rank out of range");
        th.phi[i] = threshold_level(threshold_group(rank[i], n, n_th), n_th);
    }
    return th;
}

ThresholdAssignment degree_dependent_thresholds(const Network& net, std::uint32_t n_th,
                                                RankOrder order) {
    const Side side = net.variable_side();
    auto th = assign_thresholds(rank_by_degree(net, side, order), net.size(), n_th);
    th.ranked_side = side;
    th.order = order;
    return th;
}

void write_threshold_table(std::ostream& os, const Network& net, const ThresholdAssignment& th) {
    const auto degrees = net.degrees(th.ranked_side);
    os << "node,degree,rank,phi\n";
    for (NodeId i = 0; i < net.size(); ++i)
        os << i << ',' << degrees[i] << ',' << th.rank[i] << ',' << format_double(th.phi[i]) << '\n';
}

void write_threshold_table(const std::string& path, const Network& net,
                           const ThresholdAssignment& th) {
    std::ofstream os(path);
    if (!os) throw IoError(path, "cannot open for writing");
    write_threshold_table(os, net, th);
    if (!os) throw IoError(path, "write failed");
}

}  // namespace ddtm
