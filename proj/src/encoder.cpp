#include "netrel/encoder.hpp"

#include "netrel/errors.hpp"

namespace netrel {

ProjectedCnf encode(const NetworkInstance& g) {
    if (!g.uniform_half()) throw InvalidArgument("encoding needs every failure probability equal to 1/2");
    if (g.terminals().size() < 2) throw InvalidArgument("encoding needs at least two terminals");
    if (g.edge_count() == 0) throw InvalidArgument("encoding needs at least one edge");

    const VarMap vars{g.edge_count(), g.vertex_count()};
    ProjectedCnf cnf;
    cnf.num_vars = vars.num_vars();
    cnf.clauses.reserve(2 * g.edge_count() + 2);

    Clause some_reached, some_unreached;
    for (std::size_t t : g.terminals()) {
        some_reached.push_back(vars.vertex_var(t));
        some_unreached.push_back(-vars.vertex_var(t));
    }
    cnf.clauses.push_back(std::move(some_reached));
    cnf.clauses.push_back(std::move(some_unreached));

    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const int x = vars.edge_var(i);
        const int su = vars.vertex_var(g.edges()[i].u);
        const int sv = vars.vertex_var(g.edges()[i].v);
        cnf.clauses.push_back({-su, -x, sv});
        cnf.clauses.push_back({-sv, -x, su});
    }

    cnf.projection.reserve(g.edge_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) cnf.projection.push_back(vars.edge_var(i));
    return cnf;
}

ProjectedCnf encode(const UnweightedInstance& uw) {
    ProjectedCnf cnf = encode(uw.instance);
    if (cnf.M() != uw.M) throw ContractViolation("unweighted instance edge count disagrees with M");
    return cnf;
}

Dyadic count_to_unreliability(const BigInt& count, std::size_t M) {
    if (count < 0 || count > (BigInt(1) << M))
        throw ContractViolation("count " + count.str() + " exceeds 2^" + std::to_string(M));
    return Dyadic(count, static_cast<unsigned>(M));
}

} // namespace netrel
