#include "ddtm/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "ddtm/error.hpp"
#include "ddtm/format.hpp"

namespace ddtm::empirics {

__extension__ typedef unsigned __int128 u128;

std::string_view to_string(Axis axis) noexcept {
    return axis == Axis::follower ? "follower" : "following";
}

Axis parse_axis(std::string_view text) {
    if (text == "follower") return Axis::follower;
    if (text == "following") return Axis::following;
    throw ParameterError("axis must be 'follower' or 'following', got '" + std::string(text) + "'");
}

void validate_edges(std::span<const std::uint64_t> edges) {
    if (edges.empty()) throw ParameterError("at least one cluster edge is required");
    for (std::size_t k = 1; k < edges.size(); ++k)
        if (edges[k] <= edges[k - 1]) throw ParameterError("cluster edges must be strictly increasing");
}

std::vector<std::uint64_t> default_edges() {
    std::vector<std::uint64_t> e{0};
    for (std::uint64_t x = 10; x <= 10'000'000; x *= 10) e.push_back(x);
    return e;
}

std::optional<std::size_t> cluster_index(std::uint64_t count, std::span<const std::uint64_t> edges) {
    // First edge >= count closes the interval that contains it.
    const auto it = std::lower_bound(edges.begin(), edges.end(), count);
    if (it == edges.begin()) return std::nullopt;
    return static_cast<std::size_t>(it - edges.begin()) - 1;
}

ClusterCounts cluster_counts(std::span<const UserRecord> records, Axis axis,
                             std::span<const std::uint64_t> edges) {
    validate_edges(edges);
    ClusterCounts out{std::vector<std::uint64_t>(edges.size(), 0),
                      std::vector<std::uint64_t>(edges.size(), 0)};
    for (const auto& r : records) {
        const auto k = cluster_index(axis_count(r, axis), edges);
        if (!k) continue;
        ++out.users[*k];
        if (r.retweeted) ++out.retweeters[*k];
    }
    return out;
}

JointCounts joint_cluster_counts(std::span<const UserRecord> records,
                                 std::span<const std::uint64_t> follower_edges,
                                 std::span<const std::uint64_t> following_edges) {
    validate_edges(follower_edges);
    validate_edges(following_edges);
    JointCounts out{CountMatrix(follower_edges.size(), following_edges.size()),
                    CountMatrix(follower_edges.size(), following_edges.size())};
    for (const auto& r : records) {
        const auto i = cluster_index(r.follower_count, follower_edges);
        const auto j = cluster_index(r.following_count, following_edges);
        if (!i || !j) continue;
        ++out.users.at(*i, *j);
        if (r.retweeted) ++out.retweeters.at(*i, *j);
    }
    return out;
}

RatioMatrix ratio_matrix(const CountMatrix& users, const CountMatrix& retweeters) {
    if (users.rows != retweeters.rows || users.cols != retweeters.cols)
        throw ParameterError("user and retweeter matrices differ in shape");
    RatioMatrix out(users.rows, users.cols);
    for (std::size_t k = 0; k < users.cells.size(); ++k) {
        if (retweeters.cells[k] > users.cells[k])
            throw ParameterError("retweeter count exceeds user count");
        if (users.cells[k] > 0)
            out.cells[k] = static_cast<double>(retweeters.cells[k]) / static_cast<double>(users.cells[k]);
    }
    return out;
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

std::optional<ChiSquareTest> chi_square_one_sided(std::uint64_t a, std::uint64_t n1, std::uint64_t b,
                                                  std::uint64_t n2, double alpha) {
    if (a > n1 || b > n2) throw ParameterError("retweeters cannot exceed users");
    if (n1 == 0 || n2 == 0) return std::nullopt;

    // Direction from the exact cross products a*n2 vs b*n1.
    const u128 lhs = static_cast<u128>(a) * n2;
    const u128 rhs = static_cast<u128>(b) * n1;

    ChiSquareTest t;
    const std::uint64_t hits = a + b;
    const std::uint64_t n = n1 + n2;
    if (lhs != rhs && hits != 0 && hits != n) {
        // chi2 = n (a d - b c)^2 / (n1 n2 (a + b)(c + d)), with a d - b c = a n2 - b n1.
        const long double diff = lhs > rhs ? static_cast<long double>(lhs - rhs)
                                           : static_cast<long double>(rhs - lhs);
        const long double denom = static_cast<long double>(n1) * n2 * hits * (n - hits);
        t.chi2 = static_cast<double>(static_cast<long double>(n) * diff * diff / denom);
        t.z = (lhs > rhs ? 1.0 : -1.0) * std::sqrt(t.chi2);
    }
    t.p_one_sided = normal_upper_tail(t.z);
    t.significant = lhs > rhs && t.p_one_sided < alpha;
    return t;
}

ClusterReport monotonicity_report(std::span<const UserRecord> records, Axis axis,
                                  std::span<const std::uint64_t> edges, double alpha) {
    const auto counts = cluster_counts(records, axis, edges);
    ClusterReport rep;
    rep.axis = axis;
    rep.edges.assign(edges.begin(), edges.end());
    rep.user_counts = counts.users;
    rep.retweeter_counts = counts.retweeters;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (counts.users[k] > 0)
            rep.ratios.emplace_back(static_cast<double>(counts.retweeters[k]) /
                                    static_cast<double>(counts.users[k]));
        else
            rep.ratios.emplace_back(std::nullopt);
    }
    for (std::size_t k = 0; k + 1 < edges.size(); ++k)
        rep.tests.push_back({k, chi_square_one_sided(counts.retweeters[k], counts.users[k],
                                                     counts.retweeters[k + 1], counts.users[k + 1], alpha)});
    return rep;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_flag(std::string_view s) {
    if (s == "1" || s == "true" || s == "True" || s == "TRUE") return true;
    if (s == "0" || s == "false" || s == "False" || s == "FALSE") return false;
    throw ParameterError("retweeted must be 0/1/true/false, got '" + std::string(s) + "'");
}

std::string ratio_text(const std::optional<double>& r) { return r ? format_double(*r) : "NA"; }

}  // namespace

std::vector<UserRecord> read_user_records(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || trim(line) != "user_id,follower_count,following_count,retweeted")
        throw ParameterError("input must start with 'user_id,follower_count,following_count,retweeted'");
    std::vector<UserRecord> out;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        const auto row = trim(line);
        if (row.empty()) continue;
        std::vector<std::string_view> f;
        std::size_t start = 0;
        for (;;) {
            const auto pos = row.find(',', start);
            f.push_back(trim(row.substr(start, pos - start)));
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
        if (f.size() != 4) throw ParameterError("line " + std::to_string(lineno) + ": expected 4 fields");
        try {
            out.push_back({std::string(f[0]), parse_integer<std::uint64_t>(f[1]),
                           parse_integer<std::uint64_t>(f[2]), parse_flag(f[3])});
        } catch (const ParameterError& e) {
            throw ParameterError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<UserRecord> read_user_records(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError(path, "cannot open input");
    return read_user_records(is);
}

std::vector<std::uint64_t> parse_edges(std::string_view text) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(',', start);
        out.push_back(parse_integer<std::uint64_t>(trim(text.substr(start, pos - start))));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    validate_edges(out);
    return out;
}

void write_report(std::ostream& os, const ClusterReport& rep) {
    os << "kind,index,lower,upper,users,retweeters,ratio,chi2,p_one_sided,significant\n";
    for (std::size_t k = 0; k < rep.edges.size(); ++k) {
        os << "cluster," << k << ',' << rep.edges[k] << ','
           << (k + 1 < rep.edges.size() ? std::to_string(rep.edges[k + 1]) : std::string("inf")) << ','
           << rep.user_counts[k] << ',' << rep.retweeter_counts[k] << ',' << ratio_text(rep.ratios[k])
           << ",,,\n";
    }
    for (const auto& pt : rep.tests) {
        if (!pt.test) continue;
        os << "test," << pt.first << ",,,,,," << format_double(pt.test->chi2) << ','
           << format_double(pt.test->p_one_sided) << ',' << (pt.test->significant ? 1 : 0) << '\n';
    }
}

void write_joint(std::ostream& os, const JointCounts& counts) {
    const auto ratios = ratio_matrix(counts.users, counts.retweeters);
    os << "follower_cluster,following_cluster,users,retweeters,ratio\n";
    for (std::size_t i = 0; i < counts.users.rows; ++i)
        for (std::size_t j = 0; j < counts.users.cols; ++j)
            os << i << ',' << j << ',' << counts.users.at(i, j) << ',' << counts.retweeters.at(i, j) << ','
               << ratio_text(ratios.at(i, j)) << '\n';
}

}  // namespace ddtm::empirics
