#include "netrel/cnf.hpp"

#include "netrel/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace netrel {

std::string emit_dimacs(const ProjectedCnf& cnf) {
    std::ostringstream out;
    for (std::size_t i = 0; i < cnf.projection.size(); i += 10) {
        out << "c ind";
        for (std::size_t j = i; j < std::min(i + 10, cnf.projection.size()); ++j) out << ' ' << cnf.projection[j];
        out << " 0\n";
    }
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const Clause& c : cnf.clauses) {
        for (Literal l : c) out << l << ' ';
        out << "0\n";
    }
    return out.str();
}

ProjectedCnf parse_dimacs(std::string_view text) {
    ProjectedCnf cnf;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    Clause current;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;
        if (first == "c") {
            std::string tag;
            if (!(fields >> tag) || tag != "ind") continue;
            bool terminated = false;
            for (long v; fields >> v;) {
                if (v == 0) {
                    terminated = true;
                    break;
                }
                if (v < 0) throw ParseError(lineno, "negative projection id");
                cnf.projection.push_back(static_cast<int>(v));
            }
            if (!terminated) throw ParseError(lineno, "'c ind' line must end with 0");
            continue;
        }
        if (first == "p") {
            std::string fmt;
            long nv = -1, nc = -1;
            if (have_header || !(fields >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
                throw ParseError(lineno, "malformed problem line");
            cnf.num_vars = static_cast<std::size_t>(nv);
            declared_clauses = static_cast<std::size_t>(nc);
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(lineno, "clause before 'p cnf' header");
        std::istringstream lits(line);
        for (long l; lits >> l;) {
            if (l == 0) {
                if (current.empty()) throw ParseError(lineno, "empty clause");
                cnf.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (static_cast<std::size_t>(std::labs(l)) > cnf.num_vars)
                throw ParseError(lineno, "literal exceeds declared variable count");
            current.push_back(static_cast<Literal>(l));
        }
        if (!lits.eof()) throw ParseError(lineno, "non-numeric token in clause");
    }
    if (!have_header) throw ParseError(lineno, "missing 'p cnf' header");
    if (!current.empty()) throw ParseError(lineno, "unterminated clause");
    if (cnf.clauses.size() != declared_clauses)
        throw ParseError(lineno, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                     std::to_string(cnf.clauses.size()));
    std::sort(cnf.projection.begin(), cnf.projection.end());
    cnf.projection.erase(std::unique(cnf.projection.begin(), cnf.projection.end()), cnf.projection.end());
    if (!cnf.projection.empty() && static_cast<std::size_t>(cnf.projection.back()) > cnf.num_vars)
        throw ParseError(lineno, "projection id exceeds declared variable count");
    return cnf;
}

} // namespace netrel
