#include "ddtm/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ddtm/error.hpp"

namespace ddtm {

std::string_view to_string(Side side) noexcept { return side == Side::out ? "out" : "in"; }

Side parse_side(std::string_view text) {
    if (text == "out") return Side::out;
    if (text == "in") return Side::in;
    throw ParameterError("side must be 'out' or 'in', got '" + std::string(text) + "'");
}

std::uint32_t power_law_target(NodeId n, double gamma, double u, std::uint32_t floor) {
    const double raw = std::sqrt(static_cast<double>(n)) * std::pow(u, gamma);
    const auto rounded = static_cast<std::uint32_t>(std::llround(raw));
    return std::max(floor, rounded);
}

DegreeTargets sample_degree_targets(NodeId n, double gamma, Side variable_side,
                                    std::uint32_t fixed_degree, Rng& rng, std::uint32_t floor) {
    if (n < 2) throw ParameterError("node count must be at least 2");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be positive");
    if (fixed_degree < 1) throw ParameterError("fixed degree must be at least 1");
    if (floor < 1) throw ParameterError("degree floor must be at least 1");

    DegreeTargets out;
    out.n = n;
    out.variable_side = variable_side;
    out.fixed_degree = fixed_degree;
    out.gamma = gamma;
    out.targets.resize(n);
    for (auto& t : out.targets) t = power_law_target(n, gamma, uniform_open_closed(rng), floor);
    return out;
}

namespace {

void validate(const DegreeTargets& t) {
    if (t.n < 2) throw ParameterError("node count must be at least 2");
    if (t.targets.size() != t.n) throw ParameterError("targets length must equal node count");
    if (t.fixed_degree < 1) throw ParameterError("fixed degree must be at least 1");
    for (auto x : t.targets)
        if (x < 1) throw ParameterError("every degree target must be at least 1");
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = uniform_index(rng, static_cast<std::uint32_t>(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

StubPairing pair_stubs(const DegreeTargets& t, Rng& rng) {
    validate(t);
    std::vector<NodeId> variable;
    std::vector<NodeId> fixed;
    fixed.reserve(std::size_t{t.n} * t.fixed_degree);
    for (NodeId i = 0; i < t.n; ++i) {
        variable.insert(variable.end(), t.targets[i], i);
        fixed.insert(fixed.end(), t.fixed_degree, i);
    }
    shuffle(variable, rng);
    shuffle(fixed, rng);
    const std::size_t m = std::min(variable.size(), fixed.size());
    variable.resize(m);
    fixed.resize(m);

    StubPairing p;
    if (t.variable_side == Side::out) {
        p.sources = std::move(variable);
        p.targets = std::move(fixed);
    } else {
        p.sources = std::move(fixed);
        p.targets = std::move(variable);
    }
    // Canonical position order: sources ascending. The targets stay in
    // shuffled order, so the matching itself is still uniform.
    std::sort(p.sources.begin(), p.sources.end());
    return p;
}

std::size_t repair_self_loops(StubPairing& p, std::uint64_t max_attempts, Rng& rng) {
    const std::size_t m = p.sources.size();
    std::set<std::size_t> loops;
    for (std::size_t k = 0; k < m; ++k)
        if (p.sources[k] == p.targets[k]) loops.insert(k);
    if (m < 2) return loops.size();

    const auto update = [&](std::size_t k) {
        if (p.sources[k] == p.targets[k])
            loops.insert(k);
        else
            loops.erase(k);
    };

    std::uint64_t attempts = 0;
    while (!loops.empty() && attempts < max_attempts) {
        const std::size_t k = *loops.begin();
        // Uniform over the m - 1 positions other than k.
        std::size_t j = uniform_index(rng, static_cast<std::uint32_t>(m - 1));
        if (j >= k) ++j;
        std::swap(p.targets[k], p.targets[j]);
        update(k);
        update(j);
        ++attempts;
    }
    return loops.size();
}

Network build_network(const DegreeTargets& t, Rng& rng) {
    StubPairing p = pair_stubs(t, rng);
    const std::size_t residual = repair_self_loops(p, std::uint64_t{100} * t.n, rng);

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(p.sources.size() - residual);
    for (std::size_t k = 0; k < p.sources.size(); ++k)
        if (p.sources[k] != p.targets[k]) edges.emplace_back(p.sources[k], p.targets[k]);

    Network net = Network::from_edges(t.n, t.variable_side, edges);
    net.set_discarded_stubs(residual);
    return net;
}

Network Network::from_edges(NodeId n, Side variable_side,
                            std::span<const std::pair<NodeId, NodeId>> edges) {
    Network net;
    net.n_ = n;
    net.variable_side_ = variable_side;
    net.out_degree_.assign(n, 0);
    net.in_degree_.assign(n, 0);

    std::vector<std::pair<NodeId, NodeId>> sorted(edges.begin(), edges.end());
    for (const auto& [s, d] : sorted) {
        if (s >= n || d >= n) throw ParameterError("edge endpoint out of range");
        if (s == d) throw ParameterError("self-loops are not allowed");
    }
    std::sort(sorted.begin(), sorted.end());

    net.out_offsets_.assign(std::size_t{n} + 1, 0);
    std::vector<std::size_t> in_counts(std::size_t{n} + 1, 0);
    for (std::size_t k = 0; k < sorted.size();) {
        const auto [s, d] = sorted[k];
        std::uint32_t mult = 0;
        while (k < sorted.size() && sorted[k] == std::pair{s, d}) {
            ++mult;
            ++k;
        }
        net.out_.push_back({d, mult});
        ++net.out_offsets_[s + 1];
        ++in_counts[d + 1];
        net.out_degree_[s] += mult;
        net.in_degree_[d] += mult;
        net.edge_count_ += mult;
    }
    for (NodeId i = 0; i < n; ++i) {
        net.out_offsets_[i + 1] += net.out_offsets_[i];
        in_counts[i + 1] += in_counts[i];
    }

    net.in_offsets_ = in_counts;
    net.in_.resize(net.out_.size());
    std::vector<std::size_t> cursor(in_counts.begin(), in_counts.end() - 1);
    for (NodeId s = 0; s < n; ++s)
        for (const auto& e : net.out_neighbors(s)) net.in_[cursor[e.node]++] = {s, e.multiplicity};
    return net;
}

namespace {

SideStats side_stats(std::span<const std::uint32_t> degrees) {
    SideStats st;
    if (degrees.empty()) return st;
    const auto [lo, hi] = std::minmax_element(degrees.begin(), degrees.end());
    st.min = *lo;
    st.max = *hi;
    st.histogram.assign(std::size_t{st.max} + 1, 0);
    std::uint64_t total = 0;
    for (auto d : degrees) {
        ++st.histogram[d];
        total += d;
    }
    st.mean = static_cast<double>(total) / static_cast<double>(degrees.size());
    return st;
}

}  // namespace

NetworkStats network_stats(const Network& net) {
    NetworkStats st;
    st.n = net.size();
    st.edges = net.edge_count();
    st.mean_degree = net.size() == 0 ? 0.0
                                     : static_cast<double>(net.edge_count()) / net.size();
    st.out = side_stats(net.out_degrees());
    st.in = side_stats(net.in_degrees());
    return st;
}

void write_edge_list(std::ostream& os, const Network& net) {
    os << "source,target,multiplicity\n";
    for (NodeId s = 0; s < net.size(); ++s)
        for (const auto& e : net.out_neighbors(s)) os << s << ',' << e.node << ',' << e.multiplicity << '\n';
}

void write_edge_list(const std::string& path, const Network& net) {
    std::ofstream os(path);
    if (!os) throw IoError(path, "cannot open for writing");
    write_edge_list(os, net);
    if (!os) throw IoError(path, "write failed");
}

Network read_edge_list(std::istream& is, NodeId n, Side variable_side) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("source,target,multiplicity", 0) != 0)
        throw ParameterError("edge list must start with 'source,target,multiplicity'");
    std::vector<std::pair<NodeId, NodeId>> edges;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        unsigned long long s = 0, d = 0, m = 0;
        char c1 = 0, c2 = 0;
        if (!(row >> s >> c1 >> d >> c2 >> m) || c1 != ',' || c2 != ',' || m == 0)
            throw ParameterError("malformed edge row: " + line);
        edges.insert(edges.end(), m, {static_cast<NodeId>(s), static_cast<NodeId>(d)});
    }
    return Network::from_edges(n, variable_side, edges);
}

void write_metadata(std::ostream& os, const NetworkMetadata& meta) {
    nlohmann::ordered_json j;
    j["n"] = meta.n;
    j["gamma"] = meta.gamma;
    j["variable_side"] = std::string(to_string(meta.variable_side));
    j["fixed_side"] = std::string(to_string(meta.variable_side == Side::out ? Side::in : Side::out));
    j["fixed_degree"] = meta.fixed_degree;
    j["seed"] = meta.seed;
    j["discarded_stubs"] = meta.discarded_stubs;
    os << j.dump(2) << '\n';
}

void write_metadata(const std::string& path, const NetworkMetadata& meta) {
    std::ofstream os(path);
    if (!os) throw IoError(path, "cannot open for writing");
    write_metadata(os, meta);
    if (!os) throw IoError(path, "write failed");
}

NetworkMetadata read_metadata(std::istream& is) {
    try {
        const auto j = nlohmann::json::parse(is);
        NetworkMetadata meta;
        meta.n = j.at("n").get<NodeId>();
        meta.gamma = j.at("gamma").get<double>();
        meta.variable_side = parse_side(j.at("variable_side").get<std::string>());
        meta.fixed_degree = j.at("fixed_degree").get<std::uint32_t>();
        meta.seed = j.at("seed").get<std::uint64_t>();
        meta.discarded_stubs = j.at("discarded_stubs").get<std::uint64_t>();
        return meta;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("bad network metadata: ") + e.what());
    }
}

}  // namespace ddtm
