#include "ddtm/config.hpp"

#include <cmath>
#include <fstream>
#include <istream>

#include "ddtm/error.hpp"
#include "ddtm/format.hpp"

namespace ddtm {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(',', start);
        const auto item = trim(s.substr(start, pos - start));
        if (item.empty()) throw ParameterError("empty list item in '" + std::string(s) + "'");
        out.push_back(item);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <class Int>
std::vector<Int> int_list(std::string_view s) {
    std::vector<Int> out;
    for (auto item : split_list(s)) out.push_back(parse_integer<Int>(item));
    return out;
}

bool parse_bool(std::string_view s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ParameterError("expected a boolean, got '" + std::string(s) + "'");
}

}  // namespace

std::vector<double> parse_p_grid(std::string_view text) {
    text = trim(text);
    if (text.find(':') != std::string_view::npos) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        if (b == std::string_view::npos) throw ParameterError("range must be start:step:stop");
        const double start = parse_double(trim(text.substr(0, a)));
        const double step = parse_double(trim(text.substr(a + 1, b - a - 1)));
        const double stop = parse_double(trim(text.substr(b + 1)));
        if (!(step > 0.0) || stop < start) throw ParameterError("range needs step > 0 and stop >= start");
        const auto intervals = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        std::vector<double> grid;
        for (long k = 0; k <= intervals; ++k) grid.push_back(start + static_cast<double>(k) * step);
        // Snap the last point onto stop when the step divides the range.
        if (std::abs(grid.back() - stop) < 1e-9) grid.back() = stop;
        return grid;
    }
    std::vector<double> grid;
    for (auto item : split_list(text)) grid.push_back(parse_double(item));
    return grid;
}

std::vector<SweepConfig> SweepPlan::expand() const {
    std::vector<SweepConfig> out;
    for (auto regime : regimes)
        for (auto n : node_counts)
            for (auto m : fixed_degrees)
                for (auto n_th : group_counts) {
                    SweepConfig c = base;
                    c.regime = regime;
                    c.n = n;
                    c.fixed_degree = m;
                    c.n_th = n_th;
                    validate(c);
                    out.push_back(std::move(c));
                }
    return out;
}

SweepPlan parse_plan(std::istream& is) {
    SweepPlan plan;
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParameterError("line " + std::to_string(lineno) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        try {
            if (key == "regime") {
                plan.regimes.clear();
                for (auto item : split_list(value)) plan.regimes.push_back(parse_regime(item));
            } else if (key == "n") {
                plan.node_counts = int_list<NodeId>(value);
            } else if (key == "fixed_degree") {
                plan.fixed_degrees = int_list<std::uint32_t>(value);
            } else if (key == "n_th") {
                plan.group_counts = int_list<std::uint32_t>(value);
            } else if (key == "gamma") {
                plan.base.gamma = parse_double(value);
            } else if (key == "p_grid") {
                plan.base.p_grid = parse_p_grid(value);
            } else if (key == "runs") {
                plan.base.runs = parse_integer<std::uint32_t>(value);
            } else if (key == "master_seed" || key == "seed") {
                plan.base.master_seed = parse_integer<std::uint64_t>(value);
            } else if (key == "max_attempts") {
                plan.base.max_attempts = parse_integer<std::uint64_t>(value);
            } else if (key == "fresh_network_per_run") {
                plan.base.fresh_network_per_run = parse_bool(value);
            } else if (key == "rank_order") {
                plan.base.rank_order = parse_rank_order(value);
            } else {
                throw ParameterError("unknown key '" + std::string(key) + "'");
            }
        } catch (const ParameterError& e) {
            throw ParameterError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return plan;
}

SweepPlan load_plan(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError(path, "cannot open config");
    return parse_plan(is);
}

}  // namespace ddtm
