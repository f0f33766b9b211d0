#include "netrel/transform.hpp"

#include "netrel/errors.hpp"

#include <sstream>

namespace netrel {

std::size_t BitExpansion::zeros_prefix(std::size_t k) const {
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < k; ++i) zeros += bits[i] == 0;
    return zeros;
}

Dyadic BitExpansion::value() const {
    BigInt num = 0;
    for (std::uint8_t b : bits) num = (num << 1) | b;
    return Dyadic(num, static_cast<unsigned>(bits.size()));
}

BitExpansion dyadic_expansion(const DyadicProb& q) {
    if (!q.is_open()) throw InvalidArgument("expansion needs q strictly inside (0,1), got " + q.to_string());
    BitExpansion out;
    out.bits.resize(q.bits());
    // Canonical form makes the numerator odd, so the last digit is 1.
    for (unsigned k = 0; k < q.bits(); ++k) out.bits[k] = (q.numerator() >> (q.bits() - 1 - k)) & 1;
    return out;
}

Gadget build_gadget(const BitExpansion& expansion) {
    const std::size_t m = expansion.length();
    if (m == 0 || expansion.bits.back() != 1)
        throw InvalidArgument("expansion must be non-empty and end in a 1");
    const std::size_t zm = expansion.zeros_prefix(m);
    Gadget g;
    g.vertex_count = zm + 2;
    g.edges.reserve(m);
    std::size_t z_prev = 0;  // z_0 = 0
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t z_k = z_prev + (expansion.bits[k] == 0);
        if (expansion.bits[k] == 0)
            g.edges.emplace_back(z_prev, z_k);
        else
            g.edges.emplace_back(z_prev, zm + 1);
        z_prev = z_k;
    }
    return g;
}

UnweightedInstance unweight(const NetworkInstance& instance) {
    if (!instance.all_open())
        throw InvalidArgument("every failure probability must lie strictly inside (0,1)");

    std::vector<std::string> vertices = instance.vertices();
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> edge_map(instance.edge_count());
    const DyadicProb half = DyadicProb::half();

    for (std::size_t i = 0; i < instance.edge_count(); ++i) {
        const Edge& e = instance.edges()[i];
        if (e.failure.is_half()) {
            edge_map[i].push_back(edges.size());
            edges.push_back(e);
            continue;
        }
        const Gadget g = build_gadget(dyadic_expansion(e.failure.complement()));
        std::vector<std::size_t> local(g.vertex_count);
        local[g.entry()] = e.u;
        local[g.exit()] = e.v;
        for (std::size_t k = 1; k + 1 < g.vertex_count; ++k) {
            local[k] = vertices.size();
            vertices.push_back(std::to_string(i) + ":" + std::to_string(k));
        }
        for (auto [a, b] : g.edges) {
            edge_map[i].push_back(edges.size());
            edges.push_back({local[a], local[b], half});
        }
    }

    std::vector<std::size_t> vertex_map(instance.vertex_count());
    for (std::size_t v = 0; v < vertex_map.size(); ++v) vertex_map[v] = v;
    const std::size_t M = edges.size();
    return UnweightedInstance{NetworkInstance(std::move(vertices), std::move(edges), instance.terminals()),
                              M, std::move(edge_map), std::move(vertex_map)};
}

std::string serialize_edge_map(const UnweightedInstance& uw) {
    std::string out;
    for (std::size_t i = 0; i < uw.edge_map.size(); ++i) {
        out += "map " + std::to_string(i);
        for (std::size_t r : uw.edge_map[i]) out += " " + std::to_string(r);
        out += "\n";
    }
    return out;
}

std::vector<std::vector<std::size_t>> parse_edge_map(std::string_view text) {
    std::vector<std::vector<std::size_t>> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string key;
        if (!(fields >> key)) continue;
        std::size_t orig = 0;
        if (key != "map" || !(fields >> orig) || orig != out.size())
            throw ParseError(lineno, "expected 'map " + std::to_string(out.size()) + " ...'");
        auto& row = out.emplace_back();
        for (std::size_t r; fields >> r;) row.push_back(r);
        if (!fields.eof()) throw ParseError(lineno, "malformed replacement index");
    }
    return out;
}

} // namespace netrel
