#include "netrel/graph_model.hpp"

#include "netrel/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <unordered_map>

namespace netrel {

NetworkInstance::NetworkInstance(std::vector<std::string> vertices, std::vector<Edge> edges,
                                 std::vector<std::size_t> terminals)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), terminals_(std::move(terminals)) {
    const std::size_t n = vertices_.size();
    {
        std::vector<std::string> sorted = vertices_;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) throw InvalidArgument("duplicate vertex '" + *dup + "'");
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u >= n || e.v >= n)
            throw InvalidArgument("edge " + std::to_string(i) + " has an undeclared endpoint");
        if (e.u == e.v) throw InvalidArgument("edge " + std::to_string(i) + " is a self-loop");
    }
    if (terminals_.size() < 2) throw InvalidArgument("at least two terminals are required");
    {
        std::vector<std::size_t> sorted = terminals_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidArgument("duplicate terminal");
        if (sorted.back() >= n) throw InvalidArgument("terminal is not a declared vertex");
    }

    offsets_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
    incident_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        incident_[fill[edges_[i].u]++] = i;
        incident_[fill[edges_[i].v]++] = i;
    }
}

std::optional<std::size_t> NetworkInstance::find_vertex(std::string_view name) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

bool NetworkInstance::all_open() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.failure.is_open(); });
}

bool NetworkInstance::uniform_half() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.failure.is_half(); });
}

StructureEvaluator::StructureEvaluator(const NetworkInstance& instance)
    : instance_(&instance), mark_(instance.vertex_count(), 0) {
    queue_.reserve(instance.vertex_count());
}

bool StructureEvaluator::safe(std::span<const std::uint8_t> states) {
    const auto& edges = instance_->edges();
    const auto& terminals = instance_->terminals();
    if (++epoch_ == 0) {
        std::fill(mark_.begin(), mark_.end(), 0);
        epoch_ = 1;
    }
    queue_.clear();
    queue_.push_back(terminals.front());
    mark_[terminals.front()] = epoch_;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
        const std::size_t v = queue_[head];
        for (std::size_t ei : instance_->incident(v)) {
            if (!states[ei]) continue;
            const std::size_t w = edges[ei].u == v ? edges[ei].v : edges[ei].u;
            if (mark_[w] != epoch_) {
                mark_[w] = epoch_;
                queue_.push_back(w);
            }
        }
    }
    return std::all_of(terminals.begin(), terminals.end(),
                       [&](std::size_t t) { return mark_[t] == epoch_; });
}

Safety evaluate_structure(const NetworkInstance& instance, const Realization& x) {
    if (x.states.size() != instance.edge_count())
        throw ContractViolation("realization length " + std::to_string(x.states.size()) +
                                " does not match edge count " + std::to_string(instance.edge_count()));
    StructureEvaluator eval(instance);
    return eval.safe(x.states) ? Safety::Safe : Safety::Unsafe;
}

Dyadic realization_probability(const NetworkInstance& instance, const Realization& x) {
    if (x.states.size() != instance.edge_count())
        throw ContractViolation("realization length does not match edge count");
    BigInt num = 1;
    unsigned exp = 0;
    for (std::size_t i = 0; i < instance.edge_count(); ++i) {
        const DyadicProb& p = instance.edges()[i].failure;
        num *= x.states[i] ? p.denominator() - p.numerator() : p.numerator();
        exp += p.bits();
    }
    return Dyadic(num, exp);
}

NetworkInstance make_grid(std::size_t side, TerminalPattern pattern, DyadicProb p) {
    if (side < 2) throw InvalidArgument("grid side must be at least 2");
    auto id = [side](std::size_t r, std::size_t c) { return r * side + c; };
    std::vector<std::string> vertices;
    vertices.reserve(side * side);
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c)
            vertices.push_back("r" + std::to_string(r) + "c" + std::to_string(c));

    std::vector<Edge> edges;
    edges.reserve(2 * side * (side - 1));
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            if (c + 1 < side) edges.push_back({id(r, c), id(r, c + 1), p});
            if (r + 1 < side) edges.push_back({id(r, c), id(r + 1, c), p});
        }
    }

    std::vector<std::size_t> terminals;
    switch (pattern) {
    case TerminalPattern::AllTerminal:
        for (std::size_t v = 0; v < side * side; ++v) terminals.push_back(v);
        break;
    case TerminalPattern::TwoTerminal:
        terminals = {id(0, 0), id(side - 1, side - 1)};
        break;
    case TerminalPattern::Checkerboard:
        for (std::size_t r = 0; r < side; ++r)
            for (std::size_t c = 0; c < side; ++c)
                if ((r + c) % 2 == 0) terminals.push_back(id(r, c));
        break;
    }
    return NetworkInstance(std::move(vertices), std::move(edges), std::move(terminals));
}

std::string_view to_string(TerminalPattern pattern) {
    switch (pattern) {
    case TerminalPattern::AllTerminal: return "all";
    case TerminalPattern::TwoTerminal: return "two";
    case TerminalPattern::Checkerboard: return "checker";
    }
    return "?";
}

TerminalPattern parse_terminal_pattern(std::string_view text) {
    if (text == "all") return TerminalPattern::AllTerminal;
    if (text == "two") return TerminalPattern::TwoTerminal;
    if (text == "checker" || text == "checkerboard") return TerminalPattern::Checkerboard;
    throw InvalidArgument("unknown terminal pattern '" + std::string(text) + "'");
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw InvalidArgument("bad integer '" + std::string(s) + "'");
    return out;
}

DyadicProb round_decimal(std::string_view token, unsigned bits) {
    if (bits == 0 || bits > DyadicProb::kMaxBits)
        throw InvalidArgument("round directive must be between 1 and " +
                              std::to_string(DyadicProb::kMaxBits) + " bits");
    auto dot = token.find('.');
    std::string_view whole = token.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : token.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (dot != std::string_view::npos && !all_digits(frac)))
        throw InvalidArgument("malformed probability '" + std::string(token) + "'");
    // value = digits / 10^scale; numerator = round(value * 2^bits), ties to even.
    // cpp_int reads a leading 0 as an octal prefix.
    std::string text = std::string(whole) + std::string(frac);
    text.erase(0, std::min(text.find_first_not_of('0'), text.size()));
    BigInt digits(text.empty() ? "0" : text);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt scaled = digits << bits;
    BigInt q = scaled / scale;
    BigInt r = scaled % scale;
    BigInt twice = r * 2;
    if (twice > scale || (twice == scale && (q & 1) != 0)) ++q;
    if (q > (BigInt(1) << bits))
        throw InvalidArgument("probability greater than one: '" + std::string(token) + "'");
    return DyadicProb(static_cast<std::uint64_t>(q), bits);
}

} // namespace

DyadicProb parse_probability(std::string_view token, std::optional<unsigned> round_bits) {
    auto slash = token.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = token.substr(0, slash);
        std::string_view den = token.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw InvalidArgument("malformed probability '" + std::string(token) + "'");
        std::uint64_t d = parse_u64(den);
        if (d == 0 || (d & (d - 1)) != 0)
            throw InvalidArgument("probability '" + std::string(token) + "' is not dyadic");
        return DyadicProb(parse_u64(num), static_cast<unsigned>(std::countr_zero(d)));
    }
    if (token == "0") return DyadicProb(0, 1);
    if (token == "1") return DyadicProb(1, 0);
    if (!round_bits)
        throw InvalidArgument("decimal probability '" + std::string(token) +
                              "' requires a 'round <bits>' directive");
    return round_decimal(token, *round_bits);
}

NetworkInstance parse_instance(std::string_view text, ProbabilityDomain domain) {
    std::vector<std::string> vertices;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Edge> edges;
    std::vector<std::size_t> terminals;
    std::optional<std::size_t> declared_vertices;
    std::optional<unsigned> round_bits;
    bool have_header = false;
    bool have_terminals = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError(lineno, "unknown vertex '" + name + "'");
        return it->second;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream fields(raw);
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) tok.push_back(std::move(t));
        if (tok.empty()) continue;

        const std::string& key = tok[0];
        if (!have_header) {
            if (key != "nrel" || tok.size() != 2 || tok[1] != "1")
                throw ParseError(lineno, "expected format header 'nrel 1'");
            have_header = true;
            continue;
        }
        if (key == "vertices") {
            if (declared_vertices || tok.size() != 2 || !all_digits(tok[1]))
                throw ParseError(lineno, "malformed 'vertices' line");
            declared_vertices = parse_u64(tok[1]);
        } else if (key == "v") {
            if (!declared_vertices) throw ParseError(lineno, "'v' before 'vertices'");
            if (tok.size() != 2) throw ParseError(lineno, "malformed 'v' line");
            if (!edges.empty()) throw ParseError(lineno, "vertex declared after edges");
            if (!index.emplace(tok[1], vertices.size()).second)
                throw ParseError(lineno, "duplicate vertex '" + tok[1] + "'");
            vertices.push_back(tok[1]);
        } else if (key == "round") {
            if (tok.size() != 2 || !all_digits(tok[1])) throw ParseError(lineno, "malformed 'round' line");
            round_bits = static_cast<unsigned>(parse_u64(tok[1]));
        } else if (key == "e") {
            if (tok.size() != 4) throw ParseError(lineno, "edge line needs 'e <u> <v> <prob>'");
            if (declared_vertices && vertices.size() != *declared_vertices)
                throw ParseError(lineno, "declared " + std::to_string(*declared_vertices) +
                                             " vertices but listed " + std::to_string(vertices.size()));
            std::size_t u = lookup(tok[1]);
            std::size_t v = lookup(tok[2]);
            if (u == v) throw ParseError(lineno, "self-loop on '" + tok[1] + "'");
            DyadicProb p;
            try {
                p = parse_probability(tok[3], round_bits);
            } catch (const InvalidArgument& err) {
                throw ParseError(lineno, err.what());
            }
            if (domain == ProbabilityDomain::Open && !p.is_open())
                throw ParseError(lineno, "failure probability must lie strictly inside (0,1)");
            edges.push_back({u, v, p});
        } else if (key == "k") {
            if (have_terminals) throw ParseError(lineno, "duplicate terminal line");
            for (std::size_t i = 1; i < tok.size(); ++i) terminals.push_back(lookup(tok[i]));
            have_terminals = true;
        } else {
            throw ParseError(lineno, "unknown directive '" + key + "'");
        }
    }

    if (!have_header) throw ParseError(lineno, "empty instance");
    if (!declared_vertices) throw ParseError(lineno, "missing 'vertices' line");
    if (vertices.size() != *declared_vertices)
        throw ParseError(lineno, "declared " + std::to_string(*declared_vertices) + " vertices but listed " +
                                     std::to_string(vertices.size()));
    if (!have_terminals) throw ParseError(lineno, "missing terminal line 'k'");
    try {
        return NetworkInstance(std::move(vertices), std::move(edges), std::move(terminals));
    } catch (const InvalidArgument& err) {
        throw ParseError(lineno, err.what());
    }
}

std::string serialize_instance(const NetworkInstance& instance) {
    std::string out = "nrel 1\n";
    out += "vertices " + std::to_string(instance.vertex_count()) + "\n";
    for (const auto& v : instance.vertices()) out += "v " + v + "\n";
    for (const Edge& e : instance.edges())
        out += "e " + instance.vertices()[e.u] + " " + instance.vertices()[e.v] + " " +
               e.failure.to_string() + "\n";
    out += "k";
    for (std::size_t t : instance.terminals()) out += " " + instance.vertices()[t];
    out += "\n";
    return out;
}

} // namespace netrel
