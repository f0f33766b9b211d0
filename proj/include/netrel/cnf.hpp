#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace netrel {

// DIMACS-style literal: +v / -v for variable v >= 1.
using Literal = int;
using Clause = std::vector<Literal>;

// CNF psi(X, S) with the projection set X; counting is over X only, S is
// existentially quantified.
struct ProjectedCnf {
    std::size_t num_vars = 0;
    std::vector<Clause> clauses;
    // Sorted, 1-based variable ids.
    std::vector<int> projection;

    std::size_t M() const noexcept { return projection.size(); }

    friend bool operator==(const ProjectedCnf&, const ProjectedCnf&) = default;
};

// Projection as "c ind ... 0" lines of at most 10 ids, then the header and
// one clause per line.
std::string emit_dimacs(const ProjectedCnf& cnf);

// Reads the subset emitted above plus ordinary comment lines. Clauses may
// span lines. Throws ParseError.
ProjectedCnf parse_dimacs(std::string_view text);

} // namespace netrel
