#include "ddtm/dynamics.hpp"

#include <ostream>

#include "ddtm/error.hpp"

namespace ddtm {

std::optional<double> weighted_in_average(const Network& net, std::span<const Opinion> s, NodeId i) {
    std::uint64_t total = 0;
    std::uint64_t ones = 0;
    for (const auto& e : net.in_neighbors(i)) {
        total += e.multiplicity;
        if (s[e.node]) ones += e.multiplicity;
    }
    if (total == 0) return std::nullopt;
    return static_cast<double>(ones) / static_cast<double>(total);
}

OpinionState::OpinionState(const Network& net, const ThresholdAssignment& th, std::vector<Opinion> s)
    : s_(std::move(s)), ones_weight_(net.size(), 0), slot_(net.size(), kAbsent) {
    if (s_.size() != net.size()) throw ParameterError("opinion vector length must equal node count");
    if (th.phi.size() != net.size()) throw ParameterError("threshold count must equal node count");
    for (NodeId i = 0; i < net.size(); ++i) {
        if (s_[i] > 1) throw ParameterError("opinions must be 0 or 1");
        if (!s_[i]) continue;
        ++ones_;
        for (const auto& e : net.out_neighbors(i)) ones_weight_[e.node] += e.multiplicity;
    }
    for (NodeId i = 0; i < net.size(); ++i) refresh(i, net, th);
}

bool OpinionState::eligible(NodeId i, const Network& net, const ThresholdAssignment& th) const noexcept {
    const std::uint32_t total = net.in_degree(i);
    if (total == 0) return false;
    const double o_bar = static_cast<double>(ones_weight_[i]) / static_cast<double>(total);
    return flip_eligible(s_[i], o_bar, th.phi[i]);
}

void OpinionState::refresh(NodeId i, const Network& net, const ThresholdAssignment& th) {
    const bool want = eligible(i, net, th);
    const bool have = slot_[i] != kAbsent;
    if (want == have) return;
    if (want) {
        slot_[i] = static_cast<std::uint32_t>(unstable_.size());
        unstable_.push_back(i);
    } else {
        const NodeId last = unstable_.back();
        unstable_[slot_[i]] = last;
        slot_[last] = slot_[i];
        unstable_.pop_back();
        slot_[i] = kAbsent;
    }
}

StepOutcome OpinionState::attempt(NodeId i, const Network& net, const ThresholdAssignment& th) {
    ++clock_;
    if (slot_[i] == kAbsent) return {i, false};

    s_[i] ^= 1;
    ++flips_;
    if (s_[i]) {
        ++ones_;
        for (const auto& e : net.out_neighbors(i)) {
            ones_weight_[e.node] += e.multiplicity;
            refresh(e.node, net, th);
        }
    } else {
        --ones_;
        for (const auto& e : net.out_neighbors(i)) {
            ones_weight_[e.node] -= e.multiplicity;
            refresh(e.node, net, th);
        }
    }
    refresh(i, net, th);
    return {i, true};
}

std::vector<Opinion> bernoulli_opinions(NodeId n, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("initial probability must lie in [0, 1]");
    std::vector<Opinion> s(n);
    // u is on (0, 1], so p = 0 never fires and p = 1 always does.
    for (auto& x : s) x = uniform_open_closed(rng) <= p ? 1 : 0;
    return s;
}

OpinionState init_opinions(const Network& net, const ThresholdAssignment& th, double p, Rng& rng) {
    return OpinionState(net, th, bernoulli_opinions(net.size(), p, rng));
}

StepOutcome step(const Network& net, OpinionState& state, const ThresholdAssignment& th, Rng& rng) {
    if (state.fixated()) throw ContractViolation("step called on a fixated state");
    return state.attempt(uniform_index(rng, net.size()), net, th);
}

void write_trace_header(std::ostream& os) { os << "attempt,node,flipped,ones_count\n"; }

RunResult run_from_state(const Network& net, const ThresholdAssignment& th, OpinionState state,
                         Rng& rng, std::uint64_t max_attempts, std::ostream* trace) {
    if (max_attempts < 1) throw ParameterError("attempt cap must be at least 1");
    if (trace) write_trace_header(*trace);
    while (!state.fixated() && state.clock() < max_attempts) {
        const auto out = step(net, state, th, rng);
        if (trace)
            *trace << state.clock() << ',' << out.node << ',' << (out.flipped ? 1 : 0) << ','
                   << state.ones() << '\n';
    }
    RunResult r;
    r.fixated = state.fixated();
    r.t_f = state.clock();
    r.t_f_sweeps = static_cast<double>(r.t_f) / static_cast<double>(net.size());
    r.flips = state.flips();
    r.final_state.assign(state.opinions().begin(), state.opinions().end());
    return r;
}

RunResult run_to_fixation(const Network& net, const ThresholdAssignment& th, double p, Rng& rng,
                          std::uint64_t max_attempts, std::ostream* trace) {
    if (max_attempts < 1) throw ParameterError("attempt cap must be at least 1");
    return run_from_state(net, th, init_opinions(net, th, p, rng), rng, max_attempts, trace);
}

double average_opinion(std::span<const Opinion> s) {
    if (s.empty()) return 0.0;
    std::uint64_t ones = 0;
    for (auto x : s) ones += x;
    return static_cast<double>(ones) / static_cast<double>(s.size());
}

}  // namespace ddtm
