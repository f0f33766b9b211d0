#include "netrel/projected_counter.hpp"

#include "netrel/errors.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

namespace netrel {

void Dpll::assign(Literal l) {
    value_[std::abs(l)] = l > 0 ? 1 : -1;
    trail_.push_back(std::abs(l));
}

void Dpll::undo(std::size_t mark) {
    while (trail_.size() > mark) {
        value_[trail_.back()] = 0;
        trail_.pop_back();
    }
}

bool Dpll::propagate(std::span<const Clause> clauses) {
    for (bool changed = true; changed;) {
        changed = false;
        for (const Clause& c : clauses) {
            Literal open = 0;
            int unassigned = 0;
            bool sat = false;
            for (Literal l : c) {
                const int v = value(l);
                if (v > 0) {
                    sat = true;
                    break;
                }
                if (v == 0) {
                    ++unassigned;
                    open = l;
                }
            }
            if (sat) continue;
            if (unassigned == 0) return false;
            if (unassigned == 1) {
                assign(open);
                changed = true;
            }
        }
    }
    return true;
}

bool Dpll::search(std::span<const Clause> clauses) {
    const std::size_t mark = trail_.size();
    if (!propagate(clauses)) {
        undo(mark);
        return false;
    }
    Literal branch = 0;
    for (const Clause& c : clauses) {
        bool sat = false;
        Literal open = 0;
        for (Literal l : c) {
            const int v = value(l);
            if (v > 0) {
                sat = true;
                break;
            }
            if (v == 0 && open == 0) open = l;
        }
        if (!sat) {
            branch = open;
            break;
        }
    }
    if (branch == 0) return true;
    const std::size_t decided = trail_.size();
    for (Literal l : {branch, -branch}) {
        assign(l);
        if (search(clauses)) return true;
        undo(decided);
    }
    undo(mark);
    return false;
}

bool Dpll::solve(std::span<const Clause> clauses, std::span<const Literal> assumptions) {
    undo(0);
    bool ok = true;
    for (Literal l : assumptions) {
        const int v = value(l);
        if (v < 0) {
            ok = false;
            break;
        }
        if (v == 0) assign(l);
    }
    ok = ok && search(clauses);
    undo(0);
    return ok;
}

namespace {

using Residual = std::vector<Clause>;

bool literal_less(Literal a, Literal b) {
    const int aa = std::abs(a), bb = std::abs(b);
    return aa != bb ? aa < bb : a < b;
}

// Sorted literals, no duplicates, no tautologies, sorted unique clause list.
void canonicalize(Residual& r) {
    Residual out;
    out.reserve(r.size());
    for (Clause& c : r) {
        std::sort(c.begin(), c.end(), literal_less);
        c.erase(std::unique(c.begin(), c.end()), c.end());
        bool tautology = false;
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c[i] == -c[i - 1]) tautology = true;
        if (!tautology) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    r = std::move(out);
}

struct ResidualHash {
    std::size_t operator()(const Residual& r) const {
        std::size_t seed = r.size();
        for (const Clause& c : r) {
            boost::hash_combine(seed, c.size());
            boost::hash_range(seed, c.begin(), c.end());
        }
        return seed;
    }
};

class Searcher {
public:
    Searcher(const ProjectedCnf& cnf, const CounterOptions& options)
        : projected_(cnf.num_vars + 1, 0), value_(cnf.num_vars + 1, 0), dpll_(cnf.num_vars),
          node_limit_(options.node_limit), cache_limit_(options.cache_bytes) {
        for (int v : cnf.projection) projected_[v] = 1;
    }

    BigInt run(const ProjectedCnf& cnf) {
        Residual root;
        std::size_t fixed = 0;
        if (!simplify(cnf.clauses, 0, root, fixed)) return 0;
        const std::size_t free = cnf.projection.size() - fixed - projected_vars(root).size();
        return count(root) << free;
    }

private:
    int value(Literal l) const { return l > 0 ? value_[l] : -value_[-l]; }

    void assign(Literal l) {
        value_[std::abs(l)] = l > 0 ? 1 : -1;
        touched_.push_back(std::abs(l));
    }

    std::vector<int> projected_vars(const Residual& r) const {
        std::vector<int> vars;
        for (const Clause& c : r)
            for (Literal l : c)
                if (projected_[std::abs(l)]) vars.push_back(std::abs(l));
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        return vars;
    }

    // Applies `decision` (0 = none), then unit propagation and pure-literal
    // elimination on quantified variables. Reports how many projected
    // variables other than the decision were forced.
    bool simplify(const Residual& in, Literal decision, Residual& out, std::size_t& fixed_projected) {
        touched_.clear();
        if (decision != 0) assign(decision);
        Residual cur = in;
        Residual next;
        bool conflict = false;
        for (bool changed = true; changed && !conflict;) {
            changed = false;
            next.clear();
            for (const Clause& c : cur) {
                Clause kept;
                bool sat = false;
                for (Literal l : c) {
                    const int v = value(l);
                    if (v > 0) {
                        sat = true;
                        break;
                    }
                    if (v == 0) kept.push_back(l);
                }
                if (sat) continue;
                if (kept.empty()) {
                    conflict = true;
                    break;
                }
                if (kept.size() == 1) {
                    assign(kept[0]);
                    changed = true;
                    continue;
                }
                next.push_back(std::move(kept));
            }
            if (conflict) break;
            if (!changed) changed = eliminate_pure(next);
            cur.swap(next);
        }
        fixed_projected = 0;
        for (int v : touched_) {
            if (v != std::abs(decision) && projected_[v]) ++fixed_projected;
            value_[v] = 0;
        }
        touched_.clear();
        if (conflict) return false;
        canonicalize(cur);
        out = std::move(cur);
        return true;
    }

    bool eliminate_pure(const Residual& r) {
        polarity_.clear();
        for (const Clause& c : r)
            for (Literal l : c)
                if (!projected_[std::abs(l)]) polarity_[std::abs(l)] |= l > 0 ? 1 : 2;
        bool any = false;
        for (auto [v, pol] : polarity_) {
            if (pol == 3) continue;
            assign(pol == 1 ? v : -v);
            any = true;
        }
        return any;
    }

    // Satisfiable by quantified literals alone, hence for every completion
    // of the projected variables.
    bool universally_satisfiable(const Residual& r) {
        Residual reduced;
        reduced.reserve(r.size());
        for (const Clause& c : r) {
            Clause kept;
            for (Literal l : c)
                if (!projected_[std::abs(l)]) kept.push_back(l);
            if (kept.empty()) return false;
            reduced.push_back(std::move(kept));
        }
        return dpll_.solve(reduced);
    }

    BigInt count(const Residual& r) {
        if (++nodes_ > node_limit_)
            throw ResourceLimit("projected count exceeded " + std::to_string(node_limit_) +
                                " search nodes; use an external counter");
        const std::vector<int> vars = projected_vars(r);
        if (vars.empty()) return dpll_.solve(r) ? 1 : 0;
        if (auto it = cache_.find(r); it != cache_.end()) return it->second;

        BigInt result = 0;
        if (!dpll_.solve(r)) {
            result = 0;
        } else if (universally_satisfiable(r)) {
            result = BigInt(1) << vars.size();
        } else {
            const int x = vars.front();
            for (Literal decision : {-x, x}) {
                Residual child;
                std::size_t fixed = 0;
                if (!simplify(r, decision, child, fixed)) continue;
                const std::size_t freed = vars.size() - 1 - fixed - projected_vars(child).size();
                result += count(child) << freed;
            }
        }
        remember(r, result);
        return result;
    }

    // Rough heap footprint of one entry; the cache starts over when the
    // budget is spent.
    static std::size_t footprint(const Residual& r) {
        std::size_t bytes = 96 + sizeof(Residual);
        for (const Clause& c : r) bytes += sizeof(Clause) + c.size() * sizeof(Literal);
        return bytes;
    }

    void remember(const Residual& r, const BigInt& result) {
        const std::size_t bytes = footprint(r);
        if (cache_bytes_ + bytes > cache_limit_) {
            cache_.clear();
            cache_bytes_ = 0;
        }
        if (bytes > cache_limit_) return;
        if (cache_.emplace(r, result).second) cache_bytes_ += bytes;
    }

    std::vector<std::uint8_t> projected_;
    std::vector<std::int8_t> value_;
    std::vector<int> touched_;
    std::unordered_map<int, int> polarity_;
    std::unordered_map<Residual, BigInt, ResidualHash> cache_;
    Dpll dpll_;
    std::size_t node_limit_;
    std::size_t nodes_ = 0;
    std::size_t cache_limit_;
    std::size_t cache_bytes_ = 0;
};

BigInt enumerate(const ProjectedCnf& cnf, std::size_t limit) {
    const std::size_t M = cnf.projection.size();
    if (M > limit || M >= 63)
        throw ResourceLimit("projected variable count " + std::to_string(M) + " exceeds the enumeration limit " +
                            std::to_string(limit) + "; use an external counter");
    Dpll dpll(cnf.num_vars);
    std::vector<Literal> assumptions(M);
    BigInt total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << M); ++mask) {
        for (std::size_t i = 0; i < M; ++i)
            assumptions[i] = (mask >> i) & 1 ? cnf.projection[i] : -cnf.projection[i];
        if (dpll.solve(cnf.clauses, assumptions)) ++total;
    }
    return total;
}

} // namespace

BigInt exact_projected_count(const ProjectedCnf& cnf, const CounterOptions& options) {
    for (const Clause& c : cnf.clauses)
        for (Literal l : c)
            if (l == 0 || static_cast<std::size_t>(std::abs(l)) > cnf.num_vars)
                throw ContractViolation("literal out of range");
    if (options.strategy == CountStrategy::Enumerate) return enumerate(cnf, options.enumeration_limit);
    Searcher searcher(cnf, options);
    return searcher.run(cnf);
}

} // namespace netrel
