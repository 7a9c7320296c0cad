#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ddtm/dynamics.hpp"
#include "ddtm/netgen.hpp"
#include "ddtm/thresholds.hpp"

namespace ddtm {

/// Which degree the thresholds follow. The same side carries the power-law
/// degrees; the other side is fixed.
enum class Regime { out_dependent, in_dependent };

std::string_view to_string(Regime r) noexcept;
Regime parse_regime(std::string_view text);
constexpr Side variable_side(Regime r) noexcept {
    return r == Regime::out_dependent ? Side::out : Side::in;
}

/// p = 0, 0.05, ..., 1.
std::vector<double> default_p_grid();

struct SweepConfig {
    Regime regime = Regime::in_dependent;
    NodeId n = 1000;
    std::uint32_t fixed_degree = 15;
    double gamma = kDefaultGamma;
    std::uint32_t n_th = 10;
    std::vector<double> p_grid = default_p_grid();
    std::uint32_t runs = 10000;
    std::uint64_t master_seed = 1;
    std::uint64_t max_attempts = 0;  // 0 means default_max_attempts(n)
    bool fresh_network_per_run = true;
    RankOrder rank_order = RankOrder::descending;

    std::uint64_t attempt_cap() const noexcept {
        return max_attempts ? max_attempts : default_max_attempts(n);
    }
};

/// Throws ParameterError on any out-of-range field.
void validate(const SweepConfig& config);

struct GridPointStats {
    double p = 0.0;
    double mean_s_bar = 0.0;
    double std_s_bar = 0.0;
    double mean_t_f = 0.0;  // update attempts
    double std_t_f = 0.0;
    std::uint32_t failures = 0;  // runs that hit the attempt cap

    friend bool operator==(const GridPointStats&, const GridPointStats&) = default;
};

struct SweepResult {
    SweepConfig config;
    std::vector<GridPointStats> points;
};

struct RunSample {
    double s_bar = 0.0;
    std::uint64_t t_f = 0;
    bool fixated = true;
};

struct SweepOptions {
    int threads = 0;         // 0 leaves the OpenMP default
    std::string trace_dir;   // per-run attempt traces when non-empty
};

/// Seed used to build the network shared by all runs when
/// fresh_network_per_run is false.
std::uint64_t shared_network_seed(std::uint64_t master) noexcept;

/// One network -> thresholds -> dynamics pipeline. Builds its own network
/// from `seed` unless `shared` is given.
RunSample simulate_once(const SweepConfig& config, double p, std::uint64_t seed,
                        const Network* shared = nullptr, std::ostream* trace = nullptr);

/// All runs of all grid points, indexed [grid * runs + run]. Runs are
/// distributed over OpenMP threads; each run owns its state and seed.
std::vector<RunSample> run_samples(const SweepConfig& config, const SweepOptions& options = {});

/// Mean and sample (n - 1) standard deviation, accumulated in index order.
/// The standard deviation of a single sample is 0.
struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};
MeanStd mean_std(std::span<const double> xs);

SweepResult aggregate(const SweepConfig& config, std::span<const RunSample> samples);

SweepResult run_sweep(const SweepConfig& config, const SweepOptions& options = {});

inline constexpr std::string_view kResultsHeader =
    "regime,n,fixed_degree,n_th,p,mean_s_bar,std_s_bar,mean_t_f_attempts,std_t_f,failures,runs,seed";

void emit_results(std::ostream& os, std::span<const SweepResult> results);
void emit_results(const std::string& path, std::span<const SweepResult> results);
void emit_results(const std::string& path, const SweepResult& result);

/// Parses an emitted CSV. Consecutive rows sharing (regime, n,
/// fixed_degree, n_th, runs, seed) are grouped into one SweepResult.
std::vector<SweepResult> read_results(std::istream& is);

}  // namespace ddtm
