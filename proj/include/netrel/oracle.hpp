#pragma once

#include "netrel/dyadic.hpp"
#include "netrel/graph_model.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace netrel {

inline constexpr std::size_t kDefaultOracleEdgeLimit = 24;

struct ExactResult {
    Dyadic unreliability;
    // |Omega_f|; set only when every edge fails with probability 1/2.
    std::optional<std::uint64_t> failure_state_count;
    std::uint64_t states_enumerated = 0;

    Dyadic reliability() const { return Dyadic::one() - unreliability; }
};

// Sum of Pr(X) over all unsafe edge-state vectors, by full enumeration.
// Throws ResourceLimit above edge_limit (hard cap 40).
ExactResult exact_unreliability(const NetworkInstance& instance,
                                std::size_t edge_limit = kDefaultOracleEdgeLimit);

// |{X : Phi(X) = 0}| for an instance whose edges all fail with probability
// 1/2; InvalidArgument otherwise.
std::uint64_t enumerate_failure_states(const NetworkInstance& instance,
                                       std::size_t edge_limit = kDefaultOracleEdgeLimit);

} // namespace netrel
