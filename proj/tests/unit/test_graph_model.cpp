#include "common.hpp"

#include "netrel/errors.hpp"

#include <doctest.h>

using namespace netrel;

TEST_SUITE("graph_model") {

TEST_CASE("fixture parses") {
    const NetworkInstance g = test::diamond();
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 4);
    CHECK(g.terminals() == std::vector<std::size_t>{0, 3});
    CHECK(g.edges()[1].failure == DyadicProb(3, 3));
    CHECK(g.all_open());
    CHECK_FALSE(g.uniform_half());
    CHECK(parse_instance(serialize_instance(g)) == g);
}

TEST_CASE("validation") {
    using V = std::vector<std::string>;
    const DyadicProb h = DyadicProb::half();
    CHECK_THROWS_AS(NetworkInstance(V{"a", "a"}, {}, {0, 1}), InvalidArgument);
    CHECK_THROWS_AS(NetworkInstance(V{"a", "b"}, {Edge{0, 2, h}}, {0, 1}), InvalidArgument);
    CHECK_THROWS_AS(NetworkInstance(V{"a", "b"}, {Edge{1, 1, h}}, {0, 1}), InvalidArgument);
    CHECK_THROWS_AS(NetworkInstance(V{"a", "b"}, {}, {0}), InvalidArgument);
    CHECK_THROWS_AS(NetworkInstance(V{"a", "b"}, {}, {0, 0}), InvalidArgument);
    CHECK_THROWS_AS(NetworkInstance(V{"a", "b"}, {}, {0, 5}), InvalidArgument);
    // Parallel edges are distinct.
    const NetworkInstance par(V{"a", "b"}, {Edge{0, 1, h}, Edge{1, 0, h}}, {0, 1});
    CHECK(par.incident(0).size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_instance(test::read_data("bad_instance.nrel"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
    }
    CHECK_THROWS_AS(parse_instance("nrel 1\nvertices 2\nv a\nv b\ne a b 1/3\nk a b\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("nrel 1\nvertices 2\nv a\nv b\ne a b 0.3\nk a b\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("nrel 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("nrel 1\nvertices 2\nv a\nv b\ne a b 1/1\nk a b\n", ProbabilityDomain::Open),
                    ParseError);
    CHECK_NOTHROW(parse_instance("nrel 1\nvertices 2\nv a\nv b\ne a b 1/1\nk a b\n"));
}

TEST_CASE("probability tokens") {
    CHECK(parse_probability("3/8") == DyadicProb(3, 3));
    CHECK(parse_probability("0") == DyadicProb(0, 1));
    CHECK(parse_probability("1") == DyadicProb(1, 0));
    CHECK(parse_probability("0.375", 3) == DyadicProb(3, 3));
    // 0.3 * 8 = 2.4 -> 2; 0.3125 * 8 = 2.5 ties to even -> 2; 0.4375*8 = 3.5 -> 4
    CHECK(parse_probability("0.3", 3) == DyadicProb(2, 3));
    CHECK(parse_probability("0.3125", 3) == DyadicProb(2, 3));
    CHECK(parse_probability("0.4375", 3) == DyadicProb(4, 3));
    CHECK_THROWS_AS(parse_probability("0.3"), InvalidArgument);
    CHECK_THROWS_AS(parse_probability("5/4"), InvalidArgument);
}

TEST_CASE("decimal round directive") {
    const NetworkInstance g = parse_instance("nrel 1\nround 4\nvertices 2\nv a\nv b\ne a b 0.1\nk a b\n");
    // 0.1 * 16 = 1.6 -> 2/16
    CHECK(g.edges()[0].failure == DyadicProb(1, 3));
}

TEST_CASE("structure function") {
    const NetworkInstance g = test::diamond();
    // edges: ab, ac, bd, cd
    CHECK(evaluate_structure(g, {{1, 0, 1, 0}}) == Safety::Safe);
    CHECK(evaluate_structure(g, {{0, 1, 0, 1}}) == Safety::Safe);
    CHECK(evaluate_structure(g, {{1, 0, 0, 1}}) == Safety::Unsafe);
    CHECK(evaluate_structure(g, {{0, 0, 0, 0}}) == Safety::Unsafe);
    CHECK_THROWS_AS(evaluate_structure(g, {{1, 1}}), ContractViolation);
    CHECK(realization_probability(g, {{1, 1, 1, 1}}) == Dyadic(5, 6));
    CHECK(realization_probability(g, {{0, 0, 0, 0}}) == Dyadic(3, 6));
}

TEST_CASE("monotone structure") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const NetworkInstance g = test::random_instance(rng, 6, 9, 2);
        StructureEvaluator eval(g);
        std::vector<std::uint8_t> x(g.edge_count());
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.size()); ++mask) {
            for (std::size_t e = 0; e < x.size(); ++e) x[e] = (mask >> e) & 1;
            if (!eval.safe(x)) continue;
            for (std::size_t e = 0; e < x.size(); ++e) {
                if (x[e]) continue;
                x[e] = 1;
                CHECK(eval.safe(x));
                x[e] = 0;
            }
        }
    }
}

TEST_CASE("grids") {
    const NetworkInstance g = make_grid(3, TerminalPattern::TwoTerminal, DyadicProb(1, 3));
    CHECK(g.vertex_count() == 9);
    CHECK(g.edge_count() == 12);
    CHECK(g.terminals() == std::vector<std::size_t>{0, 8});
    CHECK(g.vertices()[5] == "r1c2");
    CHECK(make_grid(3, TerminalPattern::AllTerminal, DyadicProb::half()).terminals().size() == 9);
    CHECK(make_grid(3, TerminalPattern::Checkerboard, DyadicProb::half()).terminals() ==
          std::vector<std::size_t>{0, 2, 4, 6, 8});
    CHECK(make_grid(4, TerminalPattern::AllTerminal, DyadicProb::half()).edge_count() == 24);
    CHECK(parse_terminal_pattern("checker") == TerminalPattern::Checkerboard);
    CHECK_THROWS_AS(parse_terminal_pattern("some"), InvalidArgument);
    CHECK_THROWS_AS(make_grid(1, TerminalPattern::TwoTerminal, DyadicProb::half()), InvalidArgument);
}

}
