#pragma once

#include "netrel/graph_model.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace netrel {

// Binary digits b_1..b_m of a dyadic q in (0,1); minimal, so b_m = 1.
struct BitExpansion {
    std::vector<std::uint8_t> bits;

    std::size_t length() const noexcept { return bits.size(); }
    // Number of zeros among the first k digits (k = 0 gives 0).
    std::size_t zeros_prefix(std::size_t k) const;
    std::size_t ones_prefix(std::size_t k) const { return k - zeros_prefix(k); }
    Dyadic value() const;
};

// Series-parallel gadget on local vertices 0..z_m+1 whose two-terminal
// reliability at uniform failure probability 1/2 equals the expansion value.
// Entry is local vertex 0, exit is local vertex z_m+1.
struct Gadget {
    std::size_t vertex_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::size_t entry() const noexcept { return 0; }
    std::size_t exit() const noexcept { return vertex_count - 1; }
};

struct UnweightedInstance {
    NetworkInstance instance;
    // Total projected edge count, sum of m_e.
    std::size_t M = 0;
    // original edge index -> replacement edge indices, in gadget order.
    std::vector<std::vector<std::size_t>> edge_map;
    // original vertex index -> vertex index in `instance`.
    std::vector<std::size_t> vertex_map;
};

// Throws InvalidArgument unless q is strictly inside (0,1).
BitExpansion dyadic_expansion(const DyadicProb& q);

Gadget build_gadget(const BitExpansion& expansion);

// Replaces each edge whose failure probability is not 1/2 by the gadget for
// its reliability 1 - p_e. Gadget-internal vertices are named
// "<edge-index>:<k>" and appended after the original vertices. Edges at 1/2
// pass through unchanged.
UnweightedInstance unweight(const NetworkInstance& instance);

// Sidecar text: one "map <orig> <r1> <r2> ..." line per original edge.
std::string serialize_edge_map(const UnweightedInstance& uw);
std::vector<std::vector<std::size_t>> parse_edge_map(std::string_view text);

} // namespace netrel
