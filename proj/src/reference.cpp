#include "ddtm/reference.hpp"

#include "ddtm/error.hpp"

namespace ddtm::reference {

std::vector<NodeId> unstable_nodes(const Network& net, const ThresholdAssignment& th,
                                   std::span<const Opinion> s) {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < net.size(); ++i)
        if (flip_eligible(s[i], weighted_in_average(net, s, i), th.phi[i])) out.push_back(i);
    return out;
}

bool is_fixed_point(const Network& net, const ThresholdAssignment& th, std::span<const Opinion> s) {
    for (NodeId i = 0; i < net.size(); ++i)
        if (flip_eligible(s[i], weighted_in_average(net, s, i), th.phi[i])) return false;
    return true;
}

RunResult run_to_fixation(const Network& net, const ThresholdAssignment& th, double p, Rng& rng,
                          std::uint64_t max_attempts) {
    if (max_attempts < 1) throw ParameterError("attempt cap must be at least 1");
    std::vector<Opinion> s = bernoulli_opinions(net.size(), p, rng);
    RunResult r;
    std::uint64_t clock = 0;
    while (!is_fixed_point(net, th, s) && clock < max_attempts) {
        const NodeId i = uniform_index(rng, net.size());
        ++clock;
        if (flip_eligible(s[i], weighted_in_average(net, s, i), th.phi[i])) {
            s[i] ^= 1;
            ++r.flips;
        }
    }
    r.fixated = is_fixed_point(net, th, s);
    r.t_f = clock;
    r.t_f_sweeps = static_cast<double>(clock) / static_cast<double>(net.size());
    r.final_state = std::move(s);
    return r;
}

}  // namespace ddtm::reference
