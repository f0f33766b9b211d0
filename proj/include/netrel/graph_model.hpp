#pragma once

#include "netrel/dyadic.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace netrel {

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    DyadicProb failure;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected multigraph with a terminal set and independent edge failure
// probabilities. Edges carry their own identity (index), so parallel edges
// are distinct. Immutable once constructed.
class NetworkInstance {
public:
    // Throws InvalidArgument on: unknown endpoint, self-loop, duplicate
    // vertex name, fewer than two terminals, duplicate or unknown terminal.
    NetworkInstance(std::vector<std::string> vertices, std::vector<Edge> edges,
                    std::vector<std::size_t> terminals);

    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::size_t>& terminals() const noexcept { return terminals_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::optional<std::size_t> find_vertex(std::string_view name) const;

    // Edge indices incident to vertex v (CSR slice).
    std::span<const std::size_t> incident(std::size_t v) const {
        return {incident_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    bool all_open() const;
    bool uniform_half() const;

    friend bool operator==(const NetworkInstance& a, const NetworkInstance& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.terminals_ == b.terminals_;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> terminals_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> incident_;
};

// One state per edge, in edge order: 1 = operational, 0 = failed.
struct Realization {
    std::vector<std::uint8_t> states;
};

enum class Safety { Safe, Unsafe };

// Breadth-first search over operational edges from the first terminal.
// Holds scratch buffers so repeated evaluations do not allocate.
class StructureEvaluator {
public:
    explicit StructureEvaluator(const NetworkInstance& instance);

    // True iff all terminals are mutually connected. `states` must have one
    // entry per edge; not checked here.
    bool safe(std::span<const std::uint8_t> states);

private:
    const NetworkInstance* instance_;
    std::vector<std::uint32_t> mark_;
    std::vector<std::size_t> queue_;
    std::uint32_t epoch_ = 0;
};

Safety evaluate_structure(const NetworkInstance& instance, const Realization& x);

// Product over edges of p_e (failed) or 1-p_e (operational), exactly.
Dyadic realization_probability(const NetworkInstance& instance, const Realization& x);

enum class TerminalPattern { AllTerminal, TwoTerminal, Checkerboard };

// side x side lattice, row-major vertices named "r<row>c<col>". Checkerboard
// terminals are the vertices with (row + col) even.
NetworkInstance make_grid(std::size_t side, TerminalPattern pattern, DyadicProb p);

std::string_view to_string(TerminalPattern pattern);
TerminalPattern parse_terminal_pattern(std::string_view text);

enum class ProbabilityDomain {
    Closed,  // p in [0,1]; crude Monte Carlo and the oracle accept this
    Open,    // p in (0,1); required by the counting pipeline
};

// Line-oriented instance format; see README for the grammar.
NetworkInstance parse_instance(std::string_view text,
                               ProbabilityDomain domain = ProbabilityDomain::Closed);
std::string serialize_instance(const NetworkInstance& instance);

// Parses "a/2^k" or, when round_bits is set, a decimal rounded to that many
// bits (nearest, ties to even).
DyadicProb parse_probability(std::string_view token, std::optional<unsigned> round_bits = {});

} // namespace netrel
