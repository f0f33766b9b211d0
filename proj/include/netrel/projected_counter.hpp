#pragma once

#include "netrel/cnf.hpp"
#include "netrel/dyadic.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace netrel {

enum class CountStrategy {
    // Visit every assignment of the projected variables and decide the
    // residual formula over the remaining variables with a DPLL search.
    Enumerate,
    // Branch on projected variables with unit propagation, pure-literal
    // elimination on quantified variables, and a cache keyed on the residual
    // clause set. Subtrees are closed early when the residual is
    // unsatisfiable, or satisfiable using quantified literals alone.
    Search,
};

struct CounterOptions {
    CountStrategy strategy = CountStrategy::Search;
    // Largest M accepted by Enumerate.
    std::size_t enumeration_limit = 24;
    // Largest number of search nodes visited by Search.
    std::size_t node_limit = 5'000'000;
    // Memory budget for the residual cache; it is flushed when full.
    std::size_t cache_bytes = std::size_t{256} << 20;
};

// |{X : exists S, psi(X, S)}| over the projection set. Purely clausal: no
// knowledge of where the formula came from. Throws ResourceLimit when the
// configured limit is exceeded; use an external counter for such inputs.
BigInt exact_projected_count(const ProjectedCnf& cnf, const CounterOptions& options = {});

// Plain DPLL with unit propagation.
class Dpll {
public:
    explicit Dpll(std::size_t num_vars) : value_(num_vars + 1, 0) {}

    // Satisfiable with every literal in `assumptions` true?
    bool solve(std::span<const Clause> clauses, std::span<const Literal> assumptions = {});

private:
    int value(Literal l) const { return l > 0 ? value_[l] : -value_[-l]; }
    void assign(Literal l);
    void undo(std::size_t mark);
    bool propagate(std::span<const Clause> clauses);
    bool search(std::span<const Clause> clauses);

    std::vector<std::int8_t> value_;
    std::vector<int> trail_;
};

} // namespace netrel
