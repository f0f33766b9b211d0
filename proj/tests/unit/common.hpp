#pragma once

#include "netrel/graph_model.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace netrel::test {

inline std::string data_path(const std::string& name) { return std::string(NETREL_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
    std::ifstream in(data_path(name), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline NetworkInstance diamond() { return parse_instance(read_data("diamond.nrel")); }

inline NetworkInstance single_edge(DyadicProb p) {
    return NetworkInstance({"s", "t"}, {Edge{0, 1, p}}, {0, 1});
}

// Random connected-or-not multigraph with dyadic failure probabilities of at
// most max_bits bits, strictly inside (0,1).
inline NetworkInstance random_instance(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_edges,
                                       unsigned max_bits) {
    std::uniform_int_distribution<std::size_t> nv(2, max_vertices), ne(1, max_edges);
    const std::size_t n = nv(rng), m = ne(rng);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<unsigned> bits(1, max_bits);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t u = pick(rng), v = pick(rng);
        while (v == u) v = pick(rng);
        const unsigned b = bits(rng);
        std::uniform_int_distribution<std::uint64_t> num(1, (std::uint64_t{1} << b) - 1);
        edges.push_back({u, v, DyadicProb(num(rng), b)});
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<std::size_t> nk(2, n);
    order.resize(nk(rng));
    return NetworkInstance(names, edges, order);
}

} // namespace netrel::test
