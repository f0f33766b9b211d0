#pragma once

#include "netrel/cnf.hpp"
#include "netrel/dyadic.hpp"
#include "netrel/transform.hpp"

#include <cstddef>

namespace netrel {

// Edge variables come first (1..M, edge order), vertex variables follow
// (M+1..M+|V|, vertex order), so the projection is the prefix 1..M.
struct VarMap {
    std::size_t edge_count = 0;
    std::size_t vertex_count = 0;

    int edge_var(std::size_t e) const { return static_cast<int>(e + 1); }
    int vertex_var(std::size_t v) const { return static_cast<int>(edge_count + v + 1); }
    std::size_t num_vars() const { return edge_count + vertex_count; }
};

// Unsafe-property formula: terminal clauses (OR s_k), (OR -s_k), then per
// edge e=(u,v) the implications (-s_u -x_e s_v) and (-s_v -x_e s_u).
// Projected counts equal the number of failed edge-state vectors.
ProjectedCnf encode(const UnweightedInstance& uw);
// Same, for an instance whose probabilities are already all 1/2.
ProjectedCnf encode(const NetworkInstance& uniform_half_instance);

// count / 2^M. Throws ContractViolation if count > 2^M.
Dyadic count_to_unreliability(const BigInt& count, std::size_t M);

} // namespace netrel
