// ddtm: degree-dependent threshold model simulator.
//
//   ddtm simulate --config sweep.cfg --out results.csv [--seed S] [--threads K] [--trace]
//   ddtm analyze  --input users.csv --axis follower|following|joint --boundaries 0,1000,10000 --out report.csv
//   ddtm generate --n 1000 --side in --fixed-degree 15 --seed 7 --out edges.csv [--n-th 10 --thresholds-out t.csv]

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ddtm/config.hpp"
#include "ddtm/empirics.hpp"
#include "ddtm/error.hpp"
#include "ddtm/experiments.hpp"
#include "ddtm/netgen.hpp"
#include "ddtm/thresholds.hpp"

namespace {

struct SimulateArgs {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    bool trace = false;
};

int simulate(const SimulateArgs& args) {
    auto plan = ddtm::load_plan(args.config);
    if (args.seed) plan.base.master_seed = *args.seed;
    const auto configs = plan.expand();

    ddtm::SweepOptions options;
    options.threads = args.threads;
    std::vector<ddtm::SweepResult> results;
    for (std::size_t k = 0; k < configs.size(); ++k) {
        if (args.trace) options.trace_dir = args.out + ".traces/sweep" + std::to_string(k);
        const auto& c = configs[k];
        std::cerr << "sweep " << k + 1 << '/' << configs.size() << ": " << ddtm::to_string(c.regime)
                  << " n=" << c.n << " M=" << c.fixed_degree << " n_th=" << c.n_th
                  << " points=" << c.p_grid.size() << " runs=" << c.runs << '\n';
        results.push_back(ddtm::run_sweep(c, options));
        for (const auto& pt : results.back().points)
            if (pt.failures)
                std::cerr << "  warning: p=" << pt.p << ": " << pt.failures << " runs hit the attempt cap\n";
    }
    ddtm::emit_results(args.out, results);
    return 0;
}

struct AnalyzeArgs {
    std::string input;
    std::string axis = "follower";
    std::string boundaries;
    std::string following_boundaries;
    double alpha = ddtm::empirics::kDefaultAlpha;
    std::string out;
};

int analyze(const AnalyzeArgs& args) {
    using namespace ddtm::empirics;
    const auto records = read_user_records(args.input);
    const auto edges = args.boundaries.empty() ? default_edges() : parse_edges(args.boundaries);

    std::ofstream os(args.out);
    if (!os) throw ddtm::IoError(args.out, "cannot open for writing");
    if (args.axis == "joint") {
        const auto col_edges =
            args.following_boundaries.empty() ? edges : parse_edges(args.following_boundaries);
        write_joint(os, joint_cluster_counts(records, edges, col_edges));
    } else {
        write_report(os, monotonicity_report(records, parse_axis(args.axis), edges, args.alpha));
    }
    if (!os) throw ddtm::IoError(args.out, "write failed");
    return 0;
}

struct GenerateArgs {
    ddtm::NodeId n = 1000;
    double gamma = ddtm::kDefaultGamma;
    std::string side = "out";
    std::uint32_t fixed_degree = 15;
    std::uint64_t seed = 1;
    std::string out;
    std::string meta;
    std::uint32_t n_th = 0;
    std::string thresholds_out;
    std::string rank_order = "descending";
};

int generate(const GenerateArgs& args) {
    ddtm::Rng rng(args.seed);
    const auto targets =
        ddtm::sample_degree_targets(args.n, args.gamma, ddtm::parse_side(args.side), args.fixed_degree, rng);
    const auto net = ddtm::build_network(targets, rng);
    ddtm::write_edge_list(args.out, net);
    ddtm::write_metadata(args.meta.empty() ? args.out + ".meta.json" : args.meta,
                         {args.n, args.gamma, targets.variable_side, args.fixed_degree, args.seed,
                          net.discarded_stubs()});
    if (!args.thresholds_out.empty()) {
        if (args.n_th == 0) throw ddtm::ParameterError("--thresholds-out needs --n-th");
        ddtm::write_threshold_table(args.thresholds_out, net, ddtm::degree_dependent_thresholds(net, args.n_th, ddtm::parse_rank_order(args.rank_order)));
    }
    const auto st = ddtm::network_stats(net);
    std::cerr << "edges=" << st.edges << " mean_degree=" << st.mean_degree
              << " discarded=" << net.discarded_stubs() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degree-dependent threshold model: Monte Carlo sweeps and cluster analysis"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run Monte Carlo sweeps from a config file");
    sim_cmd->add_option("--config", sim.config, "key = value sweep config")->required()->check(CLI::ExistingFile);
    sim_cmd->add_option("--out", sim.out, "results CSV")->required();
    sim_cmd->add_option("--seed", sim.seed, "override master_seed");
    sim_cmd->add_option("--threads", sim.threads, "OpenMP threads (0 = default)")->check(CLI::NonNegativeNumber);
    sim_cmd->add_flag("--trace", sim.trace, "write per-run attempt traces under <out>.traces/");

    AnalyzeArgs an;
    auto* an_cmd = app.add_subcommand("analyze", "Cluster users and test consecutive retweet ratios");
    an_cmd->add_option("--input", an.input, "user CSV")->required()->check(CLI::ExistingFile);
    an_cmd->add_option("--axis", an.axis, "follower, following or joint")
        ->check(CLI::IsMember({"follower", "following", "joint"}));
    an_cmd->add_option("--boundaries", an.boundaries, "comma-separated cluster edges (joint: follower axis)");
    an_cmd->add_option("--following-boundaries", an.following_boundaries, "joint only: following-axis edges");
    an_cmd->add_option("--alpha", an.alpha, "significance level")->check(CLI::Range(0.0, 1.0));
    an_cmd->add_option("--out", an.out, "report CSV")->required();

    GenerateArgs gen;
    auto* gen_cmd = app.add_subcommand("generate", "Build one network and write its edge list");
    gen_cmd->add_option("--n", gen.n, "node count");
    gen_cmd->add_option("--gamma", gen.gamma, "power-law exponent");
    gen_cmd->add_option("--side", gen.side, "power-law side: out or in")->check(CLI::IsMember({"out", "in"}));
    gen_cmd->add_option("--fixed-degree", gen.fixed_degree, "degree of the fixed side");
    gen_cmd->add_option("--seed", gen.seed, "rng seed");
    gen_cmd->add_option("--out", gen.out, "edge list CSV")->required();
    gen_cmd->add_option("--meta", gen.meta, "metadata JSON (default <out>.meta.json)");
    gen_cmd->add_option("--n-th", gen.n_th, "threshold groups for --thresholds-out");
    gen_cmd->add_option("--rank-order", gen.rank_order, "ascending or descending")
        ->check(CLI::IsMember({"ascending", "descending"}));
    gen_cmd->add_option("--thresholds-out", gen.thresholds_out, "node,degree,rank,phi CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim_cmd) return simulate(sim);
        if (*an_cmd) return analyze(an);
        if (*gen_cmd) return generate(gen);
    } catch (const ddtm::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
