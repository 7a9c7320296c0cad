#include "doctest.h"

#include <set>

#include "ddtm/rng.hpp"

TEST_CASE("derived seeds are distinct across grid and run indices") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t g = 0; g < 64; ++g)
        for (std::uint64_t r = 0; r < 512; ++r) seen.insert(ddtm::derive_seed(7, g, r));
    CHECK(seen.size() == 64 * 512);
    CHECK(ddtm::derive_seed(7, 0, 0) != ddtm::derive_seed(8, 0, 0));
}

TEST_CASE("uniform_open_closed stays in (0, 1]") {
    ddtm::Rng rng(1);
    double lo = 1.0, sum = 0.0;
    constexpr int draws = 200000;
    for (int k = 0; k < draws; ++k) {
        const double u = ddtm::uniform_open_closed(rng);
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
        lo = std::min(lo, u);
        sum += u;
    }
    CHECK(sum / draws == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("uniform_index covers its range evenly") {
    ddtm::Rng rng(2);
    std::vector<int> hits(7, 0);
    constexpr int draws = 70000;
    for (int k = 0; k < draws; ++k) ++hits[ddtm::uniform_index(rng, 7)];
    for (int h : hits) CHECK(std::abs(h - draws / 7) < 400);  // ~4.5 sd
}
