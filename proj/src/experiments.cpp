#include "ddtm/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "ddtm/error.hpp"
#include "ddtm/format.hpp"
#include "ddtm/thresholds.hpp"

namespace ddtm {

std::string_view to_string(Regime r) noexcept {
    return r == Regime::out_dependent ? "out_dependent" : "in_dependent";
}

Regime parse_regime(std::string_view text) {
    if (text == "out_dependent" || text == "out") return Regime::out_dependent;
    if (text == "in_dependent" || text == "in") return Regime::in_dependent;
    throw ParameterError("regime must be out_dependent or in_dependent, got '" + std::string(text) + "'");
}

std::vector<double> default_p_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 20; ++k) grid.push_back(k / 20.0);
    return grid;
}

void validate(const SweepConfig& c) {
    if (c.n < 2) throw ParameterError("n must be at least 2");
    if (c.fixed_degree < 1) throw ParameterError("fixed_degree must be at least 1");
    if (!(c.gamma > 0.0) || !std::isfinite(c.gamma)) throw ParameterError("gamma must be positive");
    if (c.n_th < 1 || c.n_th > c.n) throw ParameterError("n_th must lie in [1, n]");
    if (c.runs < 1) throw ParameterError("runs must be at least 1");
    if (c.p_grid.empty()) throw ParameterError("p_grid must not be empty");
    for (double p : c.p_grid)
        if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p_grid values must lie in [0, 1]");
}

std::uint64_t shared_network_seed(std::uint64_t master) noexcept {
    // Grid index 2^32 - 1 is never reached by a real grid point.
    return derive_seed(master, 0xffffffffULL, 0);
}

namespace {

Network build_for(const SweepConfig& c, Rng& rng) {
    const auto targets = sample_degree_targets(c.n, c.gamma, variable_side(c.regime), c.fixed_degree, rng);
    return build_network(targets, rng);
}

}  // namespace

RunSample simulate_once(const SweepConfig& c, double p, std::uint64_t seed, const Network* shared,
                        std::ostream* trace) {
    Rng rng(seed);
    std::optional<Network> own;
    if (!shared) own.emplace(build_for(c, rng));
    const Network& net = shared ? *shared : *own;
    const auto th = degree_dependent_thresholds(net, c.n_th, c.rank_order);
    const auto r = run_to_fixation(net, th, p, rng, c.attempt_cap(), trace);
    return {average_opinion(r.final_state), r.t_f, r.fixated};
}

std::vector<RunSample> run_samples(const SweepConfig& c, const SweepOptions& options) {
    validate(c);
    std::optional<Network> shared;
    if (!c.fresh_network_per_run) {
        Rng rng(shared_network_seed(c.master_seed));
        shared.emplace(build_for(c, rng));
    }
    if (!options.trace_dir.empty()) std::filesystem::create_directories(options.trace_dir);

    const std::int64_t runs = c.runs;
    const std::int64_t total = static_cast<std::int64_t>(c.p_grid.size()) * runs;
    std::vector<RunSample> samples(static_cast<std::size_t>(total));
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

    // Exceptions must not escape the parallel region; keep the first one.
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto grid = static_cast<std::uint64_t>(idx / runs);
        const auto run = static_cast<std::uint64_t>(idx % runs);
        try {
            const auto seed = derive_seed(c.master_seed, grid, run);
            std::unique_ptr<std::ofstream> trace;
            if (!options.trace_dir.empty()) {
                const auto path = std::filesystem::path(options.trace_dir) /
                                  ("trace_g" + std::to_string(grid) + "_r" + std::to_string(run) + ".csv");
                trace = std::make_unique<std::ofstream>(path);
                if (!*trace) throw IoError(path.string(), "cannot open trace for writing");
            }
            samples[static_cast<std::size_t>(idx)] =
                simulate_once(c, c.p_grid[grid], seed, shared ? &*shared : nullptr, trace.get());
        } catch (...) {
#pragma omp critical(ddtm_sweep_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return samples;
}

MeanStd mean_std(std::span<const double> xs) {
    MeanStd out;
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return out;
}

SweepResult aggregate(const SweepConfig& c, std::span<const RunSample> samples) {
    if (samples.size() != c.p_grid.size() * std::size_t{c.runs})
        throw ParameterError("sample count does not match grid size times runs");
    SweepResult res;
    res.config = c;
    std::vector<double> s_bar(c.runs), t_f(c.runs);
    for (std::size_t g = 0; g < c.p_grid.size(); ++g) {
        GridPointStats st;
        st.p = c.p_grid[g];
        for (std::uint32_t r = 0; r < c.runs; ++r) {
            const auto& x = samples[g * c.runs + r];
            s_bar[r] = x.s_bar;
            t_f[r] = static_cast<double>(x.t_f);
            if (!x.fixated) ++st.failures;
        }
        const auto s = mean_std(s_bar);
        const auto t = mean_std(t_f);
        st.mean_s_bar = s.mean;
        st.std_s_bar = s.std;
        st.mean_t_f = t.mean;
        st.std_t_f = t.std;
        res.points.push_back(st);
    }
    return res;
}

SweepResult run_sweep(const SweepConfig& c, const SweepOptions& options) {
    return aggregate(c, run_samples(c, options));
}

void emit_results(std::ostream& os, std::span<const SweepResult> results) {
    os << kResultsHeader << '\n';
    for (const auto& res : results) {
        const auto& c = res.config;
        for (const auto& st : res.points) {
            os << to_string(c.regime) << ',' << c.n << ',' << c.fixed_degree << ',' << c.n_th << ','
               << format_double(st.p) << ',' << format_double(st.mean_s_bar) << ','
               << format_double(st.std_s_bar) << ',' << format_double(st.mean_t_f) << ','
               << format_double(st.std_t_f) << ',' << st.failures << ',' << c.runs << ','
               << c.master_seed << '\n';
        }
    }
}

void emit_results(const std::string& path, std::span<const SweepResult> results) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(path, "cannot open for writing");
    emit_results(os, results);
    os.flush();
    if (!os) throw IoError(path, "write failed");
}

void emit_results(const std::string& path, const SweepResult& result) {
    emit_results(path, std::span<const SweepResult>(&result, 1));
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::vector<SweepResult> read_results(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kResultsHeader)
        throw ParameterError("results file must start with the standard header");
    std::vector<SweepResult> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 12) throw ParameterError("malformed results row: " + line);
        SweepConfig c;
        c.regime = parse_regime(f[0]);
        c.n = parse_integer<NodeId>(f[1]);
        c.fixed_degree = parse_integer<std::uint32_t>(f[2]);
        c.n_th = parse_integer<std::uint32_t>(f[3]);
        c.runs = parse_integer<std::uint32_t>(f[10]);
        c.master_seed = parse_integer<std::uint64_t>(f[11]);
        GridPointStats st;
        st.p = parse_double(f[4]);
        st.mean_s_bar = parse_double(f[5]);
        st.std_s_bar = parse_double(f[6]);
        st.mean_t_f = parse_double(f[7]);
        st.std_t_f = parse_double(f[8]);
        st.failures = parse_integer<std::uint32_t>(f[9]);

        const bool same = !out.empty() && out.back().config.regime == c.regime &&
                          out.back().config.n == c.n && out.back().config.fixed_degree == c.fixed_degree &&
                          out.back().config.n_th == c.n_th && out.back().config.runs == c.runs &&
                          out.back().config.master_seed == c.master_seed;
        if (!same) {
            c.p_grid.clear();
            out.push_back({c, {}});
        }
        out.back().config.p_grid.push_back(st.p);
        out.back().points.push_back(st);
    }
    return out;
}

}  // namespace ddtm
