/*
Serial reference vs incremental dynamics, and the sweep at 1..k threads.

  bench_sweep [n] [runs]
*/

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "ddtm/experiments.hpp"
#include "ddtm/reference.hpp"

namespace {

using bench_clock = std::chrono::steady_clock;

double seconds_since(bench_clock::time_point t0) {
    return std::chrono::duration<double>(bench_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const ddtm::NodeId n = argc > 1 ? static_cast<ddtm::NodeId>(std::atoi(argv[1])) : 1000;
    const std::uint32_t runs = argc > 2 ? static_cast<std::uint32_t>(std::atoi(argv[2])) : 200;

    // Single run: reference (full rescan) vs incremental unstable set.
    {
        ddtm::Rng rng(42);
        const auto targets = ddtm::sample_degree_targets(200, 3.0, ddtm::Side::in, 15, rng);
        const auto net = ddtm::build_network(targets, rng);
        const auto th = ddtm::degree_dependent_thresholds(net, 10, ddtm::RankOrder::descending);

        auto t0 = bench_clock::now();
        ddtm::Rng r1(7);
        const auto slow = ddtm::reference::run_to_fixation(net, th, 0.7, r1, 1'000'000);
        const double t_ref = seconds_since(t0);

        t0 = bench_clock::now();
        ddtm::Rng r2(7);
        const auto fast = ddtm::run_to_fixation(net, th, 0.7, r2, 1'000'000);
        const double t_inc = seconds_since(t0);

        std::cout << "single run n=200: reference " << t_ref << " s, incremental " << t_inc
                  << " s, same t_f: " << (slow.t_f == fast.t_f ? "yes" : "NO") << '\n';
    }

    ddtm::SweepConfig c;
    c.regime = ddtm::Regime::in_dependent;
    c.n = n;
    c.runs = runs;
    c.p_grid = {0.6, 0.7, 0.8};

    const int max_threads = omp_get_max_threads();
    double serial = 0.0;
    for (int k = 1; k <= max_threads; k *= 2) {
        const auto t0 = bench_clock::now();
        const auto res = ddtm::run_sweep(c, {k, {}});
        const double dt = seconds_since(t0);
        if (k == 1) serial = dt;
        std::cout << "sweep n=" << n << " runs=" << runs << " points=" << c.p_grid.size()
                  << " threads=" << k << ": " << dt << " s (speedup " << serial / dt
                  << "), s_bar(0.7)=" << res.points[1].mean_s_bar << '\n';
    }
    return 0;
}
