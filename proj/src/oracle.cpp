#include "netrel/oracle.hpp"

#include "netrel/errors.hpp"

#include <vector>

namespace netrel {

namespace {

constexpr std::size_t kHardEdgeCap = 40;

// Depth-first walk over all 2^m states carrying the numerator of Pr(X) over
// the common denominator 2^(sum of bits).
template <class Num>
class Enumerator {
public:
    explicit Enumerator(const NetworkInstance& g) : eval_(g), states_(g.edge_count()) {
        for (const Edge& e : g.edges()) {
            fail_.push_back(Num(e.failure.numerator()));
            work_.push_back(Num(e.failure.denominator() - e.failure.numerator()));
        }
    }

    void run() { walk(0, Num(1)); }

    Num unsafe_weight = 0;
    std::uint64_t unsafe_states = 0;
    std::uint64_t visited = 0;

private:
    void walk(std::size_t i, const Num& weight) {
        if (i == states_.size()) {
            ++visited;
            if (!eval_.safe(states_)) {
                unsafe_weight += weight;
                ++unsafe_states;
            }
            return;
        }
        states_[i] = 0;
        walk(i + 1, weight * fail_[i]);
        states_[i] = 1;
        walk(i + 1, weight * work_[i]);
    }

    StructureEvaluator eval_;
    std::vector<std::uint8_t> states_;
    std::vector<Num> fail_;
    std::vector<Num> work_;
};

void check_limit(const NetworkInstance& g, std::size_t edge_limit) {
    const std::size_t limit = edge_limit < kHardEdgeCap ? edge_limit : kHardEdgeCap;
    if (g.edge_count() > limit)
        throw ResourceLimit("exact enumeration limited to " + std::to_string(limit) + " edges, instance has " +
                            std::to_string(g.edge_count()));
}

} // namespace

ExactResult exact_unreliability(const NetworkInstance& g, std::size_t edge_limit) {
    check_limit(g, edge_limit);
    unsigned total_bits = 0;
    for (const Edge& e : g.edges()) total_bits += e.failure.bits();

    ExactResult out;
    if (total_bits <= 127) {
        Enumerator<unsigned __int128> walk(g);
        walk.run();
        BigInt num = 0;
        num = static_cast<std::uint64_t>(walk.unsafe_weight >> 64);
        num <<= 64;
        num |= static_cast<std::uint64_t>(walk.unsafe_weight);
        out.unreliability = Dyadic(num, total_bits);
        out.states_enumerated = walk.visited;
        if (g.uniform_half()) out.failure_state_count = walk.unsafe_states;
    } else {
        Enumerator<BigInt> walk(g);
        walk.run();
        out.unreliability = Dyadic(walk.unsafe_weight, total_bits);
        out.states_enumerated = walk.visited;
        if (g.uniform_half()) out.failure_state_count = walk.unsafe_states;
    }
    return out;
}

std::uint64_t enumerate_failure_states(const NetworkInstance& g, std::size_t edge_limit) {
    if (!g.uniform_half()) throw InvalidArgument("failure-state counting needs every edge at probability 1/2");
    check_limit(g, edge_limit);
    Enumerator<std::uint64_t> walk(g);
    walk.run();
    return walk.unsafe_states;
}

} // namespace netrel
