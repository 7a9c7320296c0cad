#include "doctest.h"

#include <sstream>

#include "ddtm/empirics.hpp"
#include "ddtm/error.hpp"
#include "ddtm/rng.hpp"
#include "empirics_oracles.hpp"

using namespace ddtm;
using namespace ddtm::empirics;

namespace {

const std::vector<std::uint64_t> kThree{0, 1000, 10000};

UserRecord user(std::uint64_t follower, std::uint64_t following, bool rt) {
    return {"u", follower, following, rt};
}

// Users drawn so that cluster k of kThree on the following axis retweets
// with probability ratios[k].
std::vector<UserRecord> planted(const std::vector<double>& ratios, int per_cluster, Rng& rng) {
    const std::uint64_t centers[] = {500, 5000, 50000};
    std::vector<UserRecord> out;
    for (std::size_t k = 0; k < ratios.size(); ++k)
        for (int i = 0; i < per_cluster; ++i)
            out.push_back(user(10, centers[k], uniform_open_closed(rng) <= ratios[k]));
    return out;
}

}  // namespace

TEST_CASE("cluster assignment uses upper-inclusive intervals") {
    CHECK(cluster_index(500, kThree) == 0u);
    CHECK(cluster_index(1000, kThree) == 0u);
    CHECK(cluster_index(1001, kThree) == 1u);
    CHECK(cluster_index(10000, kThree) == 1u);
    CHECK(cluster_index(10001, kThree) == 2u);
    CHECK(cluster_index(94'833'565, kThree) == 2u);
    CHECK_FALSE(cluster_index(0, kThree).has_value());
    CHECK(default_edges().size() == 8);
}

TEST_CASE("cluster counts") {
    const std::vector<UserRecord> none;
    const auto empty = cluster_counts(none, Axis::follower, kThree);
    CHECK(empty.users == std::vector<std::uint64_t>{0, 0, 0});
    CHECK(empty.retweeters == std::vector<std::uint64_t>{0, 0, 0});

    const std::vector<UserRecord> few{user(500, 0, true), user(1000, 0, false), user(20000, 0, true)};
    const auto c = cluster_counts(few, Axis::follower, kThree);
    CHECK(c.users == std::vector<std::uint64_t>{2, 0, 1});
    CHECK(c.retweeters == std::vector<std::uint64_t>{1, 0, 1});

    const std::vector<std::uint64_t> unsorted{10, 5};
    CHECK_THROWS_AS(cluster_counts(few, Axis::follower, unsorted), ParameterError);
    const std::vector<std::uint64_t> dup{5, 5};
    CHECK_THROWS_AS(cluster_counts(few, Axis::follower, dup), ParameterError);
}

TEST_CASE("cluster counts agree with a linear-scan oracle") {
    Rng rng(10);
    std::vector<UserRecord> records;
    for (int i = 0; i < 10000; ++i) {
        // Bias toward the edges to exercise boundary values.
        const std::uint64_t pick = uniform_index(rng, 4);
        const std::uint64_t fol = pick == 0 ? kThree[uniform_index(rng, 3)] + uniform_index(rng, 2)
                                            : uniform_index(rng, 30000);
        records.push_back(user(fol, uniform_index(rng, 30000), uniform_index(rng, 2) == 1));
    }
    const auto c = cluster_counts(records, Axis::follower, kThree);
    std::vector<std::uint64_t> users(3, 0), rts(3, 0);
    std::uint64_t inside = 0;
    for (const auto& r : records) {
        for (std::size_t k = 0; k < 3; ++k) {
            const bool above = r.follower_count > kThree[k];
            const bool below = k + 1 == 3 || r.follower_count <= kThree[k + 1];
            if (above && below) {
                ++users[k];
                rts[k] += r.retweeted;
                ++inside;
            }
        }
    }
    CHECK(c.users == users);
    CHECK(c.retweeters == rts);
    CHECK(c.users[0] + c.users[1] + c.users[2] == inside);
}

TEST_CASE("ratio matrix") {
    CountMatrix users(2, 2), rts(2, 2);
    users.at(0, 0) = 100;
    rts.at(0, 0) = 10;
    users.at(1, 1) = 3;
    rts.at(1, 1) = 3;
    const auto r = ratio_matrix(users, rts);
    CHECK(*r.at(0, 0) == 0.1);
    CHECK_FALSE(r.at(0, 1).has_value());
    CHECK(*r.at(1, 1) == 1.0);

    CHECK_THROWS_AS(ratio_matrix(users, CountMatrix(2, 3)), ParameterError);
    rts.at(0, 1) = 1;
    CHECK_THROWS_AS(ratio_matrix(users, rts), ParameterError);
}

TEST_CASE("joint counts and ratios match a per-cell loop") {
    Rng rng(77);
    std::vector<UserRecord> records;
    for (int i = 0; i < 5000; ++i)
        records.push_back(user(uniform_index(rng, 50000), uniform_index(rng, 50000), uniform_index(rng, 3) == 0));
    const auto joint = joint_cluster_counts(records, kThree, kThree);
    const auto ratios = ratio_matrix(joint.users, joint.retweeters);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::uint64_t u = 0, t = 0;
            for (const auto& r : records)
                if (cluster_index(r.follower_count, kThree) == i && cluster_index(r.following_count, kThree) == j) {
                    ++u;
                    t += r.retweeted;
                }
            CHECK(joint.users.at(i, j) == u);
            CHECK(joint.retweeters.at(i, j) == t);
            if (u)
                CHECK(*ratios.at(i, j) == static_cast<double>(t) / u);
            else
                CHECK_FALSE(ratios.at(i, j).has_value());
        }
}

TEST_CASE("chi-square worked example") {
    const auto t = chi_square_one_sided(50, 100, 30, 100);
    REQUIRE(t.has_value());
    // 200 (50*70 - 50*30)^2 / (100*100*80*120)
    CHECK(t->chi2 == doctest::Approx(200.0 * 2000.0 * 2000.0 / (100.0 * 100 * 80 * 120)).epsilon(1e-14));
    CHECK(std::abs(t->chi2 - 8.3333) < 1e-4);
    CHECK(std::abs(t->p_one_sided - oracle::normal_tail_quadrature(std::sqrt(t->chi2))) < 1e-9);
    CHECK(std::abs(t->p_one_sided - 0.00195) < 5e-5);
    CHECK(t->significant);
}

TEST_CASE("chi-square direction and degenerate tables") {
    const auto equal = chi_square_one_sided(30, 100, 30, 100);
    CHECK(equal->chi2 == 0.0);
    CHECK(equal->p_one_sided == 0.5);
    CHECK_FALSE(equal->significant);

    const auto reversed = chi_square_one_sided(30, 100, 50, 100);
    CHECK(reversed->chi2 == doctest::Approx(8.3333).epsilon(1e-4));
    CHECK(reversed->p_one_sided > 0.99);
    CHECK_FALSE(reversed->significant);

    const auto huge_reverse = chi_square_one_sided(0, 100000, 100000, 100000);
    CHECK_FALSE(huge_reverse->significant);

    CHECK_FALSE(chi_square_one_sided(0, 0, 3, 10).has_value());
    CHECK_FALSE(chi_square_one_sided(3, 10, 0, 0).has_value());
    CHECK_THROWS_AS(chi_square_one_sided(11, 10, 0, 5), ParameterError);

    const auto all = chi_square_one_sided(10, 10, 5, 5);
    CHECK(all->chi2 == 0.0);
    CHECK_FALSE(all->significant);
}

TEST_CASE("chi-square properties over random tables") {
    Rng rng(123);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::uint64_t n1 = 1 + uniform_index(rng, 5000), n2 = 1 + uniform_index(rng, 5000);
        const std::uint64_t a = uniform_index(rng, static_cast<std::uint32_t>(n1 + 1));
        const std::uint64_t b = uniform_index(rng, static_cast<std::uint32_t>(n2 + 1));
        const auto t = chi_square_one_sided(a, n1, b, n2);
        REQUIRE(t.has_value());
        REQUIRE(t->chi2 >= 0.0);
        const bool equal_ratio = a * n2 == b * n1;
        REQUIRE((t->chi2 == 0.0) == equal_ratio);
        if (t->significant) REQUIRE(a * n2 > b * n1);

        const double ref = oracle::textbook_chi2(a, n1, b, n2);
        if (ref > 0) REQUIRE(std::abs(t->chi2 - ref) / ref < 1e-10);

        const std::uint64_t k = 2 + uniform_index(rng, 5);
        const auto scaled = chi_square_one_sided(k * a, k * n1, k * b, k * n2);
        if (t->chi2 > 0) REQUIRE(std::abs(scaled->chi2 / t->chi2 - double(k)) < 1e-9);
    }
}

TEST_CASE("normal upper tail matches quadrature") {
    for (double z : {-3.0, -1.0, 0.0, 0.5, 1.96, 2.8867513, 4.0})
        CHECK(std::abs(normal_upper_tail(z) - oracle::normal_tail_quadrature(z)) < 1e-10);
}

TEST_CASE("planted decreasing ratios are all significant") {
    Rng rng(55);
    const auto records = planted({0.5, 0.3, 0.1}, 10000, rng);
    const auto rep = monotonicity_report(records, Axis::following, kThree);
    REQUIRE(rep.tests.size() == 2);
    for (const auto& pt : rep.tests) {
        REQUIRE(pt.test.has_value());
        CHECK(pt.test->significant);
    }
    CHECK(rep.user_counts == std::vector<std::uint64_t>{10000, 10000, 10000});
    CHECK(*rep.ratios[0] == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("uniform planted ratio keeps the false-positive rate at alpha") {
    Rng rng(56);
    int tests = 0, false_positives = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto records = planted({0.3, 0.3, 0.3}, 1000, rng);
        for (const auto& pt : monotonicity_report(records, Axis::following, kThree).tests) {
            ++tests;
            false_positives += pt.test->significant;
        }
    }
    // Expected 0.005 * 2000 = 10; allow about three binomial sd above that.
    CHECK(false_positives <= 20);
    CHECK(tests == 2000);
}

TEST_CASE("report shape") {
    const std::vector<std::uint64_t> single{0};
    const std::vector<UserRecord> rs{user(5, 5, true)};
    const auto one = monotonicity_report(rs, Axis::follower, single);
    CHECK(one.tests.empty());
    CHECK(one.user_counts == std::vector<std::uint64_t>{1});

    // Empty middle cluster: both adjacent tests are undefined and omitted.
    const std::vector<UserRecord> gap{user(10, 0, true), user(20, 0, false), user(20000, 0, false)};
    const auto rep = monotonicity_report(gap, Axis::follower, kThree);
    CHECK_FALSE(rep.ratios[1].has_value());
    CHECK_FALSE(rep.tests[0].test.has_value());
    std::ostringstream os;
    write_report(os, rep);
    CHECK(os.str() ==
          "kind,index,lower,upper,users,retweeters,ratio,chi2,p_one_sided,significant\n"
          "cluster,0,0,1000,2,1,0.5,,,\n"
          "cluster,1,1000,10000,0,0,NA,,,\n"
          "cluster,2,10000,inf,1,0,0,,,\n");
}

TEST_CASE("user CSV parsing") {
    std::istringstream ok("user_id,follower_count,following_count,retweeted\n"
                          "a,10,20,1\n"
                          "b, 5 ,7,false\n"
                          "\n"
                          "c,0,0,TRUE\n");
    const auto rs = read_user_records(ok);
    REQUIRE(rs.size() == 3);
    CHECK(rs[0].user_id == "a");
    CHECK(rs[0].following_count == 20);
    CHECK(rs[1].follower_count == 5);
    CHECK_FALSE(rs[1].retweeted);
    CHECK(rs[2].retweeted);

    std::istringstream bad_header("id,a,b,c\n");
    CHECK_THROWS_AS(read_user_records(bad_header), ParameterError);
    std::istringstream bad_count("user_id,follower_count,following_count,retweeted\nx,-3,1,0\n");
    CHECK_THROWS_AS(read_user_records(bad_count), ParameterError);
    std::istringstream bad_flag("user_id,follower_count,following_count,retweeted\nx,3,1,maybe\n");
    CHECK_THROWS_AS(read_user_records(bad_flag), ParameterError);

    CHECK(parse_edges("0,1000,10000") == kThree);
    CHECK_THROWS_AS(parse_edges("10,5"), ParameterError);
    CHECK(parse_axis("following") == Axis::following);
    CHECK_THROWS_AS(parse_axis("both"), ParameterError);
}
