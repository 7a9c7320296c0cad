#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ddtm::empirics {

enum class Axis { follower, following };

std::string_view to_string(Axis axis) noexcept;
Axis parse_axis(std::string_view text);

struct UserRecord {
    std::string user_id;
    std::uint64_t follower_count = 0;
    std::uint64_t following_count = 0;
    bool retweeted = false;
};

inline std::uint64_t axis_count(const UserRecord& r, Axis axis) noexcept {
    return axis == Axis::follower ? r.follower_count : r.following_count;
}

inline constexpr double kDefaultAlpha = 0.005;

/// Cluster edges e_0 < e_1 < ... < e_{k-1} describe k clusters
/// (e_0, e_1], ..., (e_{k-2}, e_{k-1}], (e_{k-1}, inf). Counts <= e_0 fall
/// outside every cluster.
void validate_edges(std::span<const std::uint64_t> edges);

/// 0, 10, 100, ..., 10^7: eight clusters, the last one open.
std::vector<std::uint64_t> default_edges();

std::optional<std::size_t> cluster_index(std::uint64_t count, std::span<const std::uint64_t> edges);

struct ClusterCounts {
    std::vector<std::uint64_t> users;
    std::vector<std::uint64_t> retweeters;
};

ClusterCounts cluster_counts(std::span<const UserRecord> records, Axis axis,
                             std::span<const std::uint64_t> edges);

/// Dense row-major matrix.
template <class T>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> cells;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, T fill = T{}) : rows(r), cols(c), cells(r * c, fill) {}

    T& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }
    const T& at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
};

using CountMatrix = Matrix<std::uint64_t>;
/// nullopt marks a cell with no users.
using RatioMatrix = Matrix<std::optional<double>>;

struct JointCounts {
    CountMatrix users;       // rows: follower clusters, cols: following clusters
    CountMatrix retweeters;
};

JointCounts joint_cluster_counts(std::span<const UserRecord> records,
                                 std::span<const std::uint64_t> follower_edges,
                                 std::span<const std::uint64_t> following_edges);

/// Element-wise retweeters / users.
RatioMatrix ratio_matrix(const CountMatrix& users, const CountMatrix& retweeters);

struct ChiSquareTest {
    double chi2 = 0.0;
    double z = 0.0;            // signed so that z > 0 when a/n1 > b/n2
    double p_one_sided = 0.5;  // P(Z >= z)
    bool significant = false;
};

/// Pearson chi-square on the 2x2 table {a, n1 - a; b, n2 - b}, no
/// continuity correction, read as a one-sided test that a/n1 > b/n2.
/// Returns nullopt when either population is empty.
std::optional<ChiSquareTest> chi_square_one_sided(std::uint64_t a, std::uint64_t n1, std::uint64_t b,
                                                  std::uint64_t n2, double alpha = kDefaultAlpha);

/// Standard normal upper tail P(Z >= z).
double normal_upper_tail(double z);

struct PairTest {
    std::size_t first = 0;  // compares cluster `first` with `first + 1`
    std::optional<ChiSquareTest> test;
};

struct ClusterReport {
    Axis axis = Axis::follower;
    std::vector<std::uint64_t> edges;
    std::vector<std::uint64_t> user_counts;
    std::vector<std::uint64_t> retweeter_counts;
    std::vector<std::optional<double>> ratios;
    std::vector<PairTest> tests;
};

ClusterReport monotonicity_report(std::span<const UserRecord> records, Axis axis,
                                  std::span<const std::uint64_t> edges, double alpha = kDefaultAlpha);

/// `user_id,follower_count,following_count,retweeted` with header;
/// retweeted accepts 0/1/true/false.
std::vector<UserRecord> read_user_records(std::istream& is);
std::vector<UserRecord> read_user_records(const std::string& path);

/// Comma-separated unsigned integers.
std::vector<std::uint64_t> parse_edges(std::string_view text);

/// `kind,index,lower,upper,users,retweeters,ratio,chi2,p_one_sided,significant`.
/// One `cluster` row per cluster, then one `test` row per defined
/// consecutive test.
void write_report(std::ostream& os, const ClusterReport& report);

/// `follower_cluster,following_cluster,users,retweeters,ratio`.
void write_joint(std::ostream& os, const JointCounts& counts);

}  // namespace ddtm::empirics
