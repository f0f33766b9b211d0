#include "common.hpp"

#include "netrel/errors.hpp"
#include "netrel/random.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace netrel;

TEST_SUITE("random") {

TEST_CASE("counter generator is deterministic and splittable") {
    CounterRng a(42), b(42), c(43);
    for (int i = 0; i < 10; ++i) {
        const auto x = a();
        CHECK(x == b());
        CHECK(x != c());
    }
    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(7, i));
    CHECK(seeds.size() == 1000);
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("uniform ranges") {
    CounterRng r(1);
    double lo = 1, hi = 0, sum = 0;
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform_oc();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
        lo = std::min(lo, u), hi = std::max(hi, u), sum += u;
    }
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
    RngEntropy e(CounterRng(9));
    double esum = 0;
    for (int i = 0; i < 100000; ++i) esum += e.exponential();
    CHECK(esum / 100000 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("stream contract") {
    FunctionStream bad([] { return 1.5; });
    CHECK_THROWS_AS(bad.next(), ContractViolation);
    FunctionStream nan([] { return std::nan(""); });
    CHECK_THROWS_AS(nan.next(), ContractViolation);
    FunctionStream ok([] { return 0.25; });
    ok.next();
    ok.next();
    CHECK(ok.drawn() == 2);
}

TEST_CASE("crude Monte Carlo uses exact edge probabilities") {
    // Single edge at 3/8: the sample mean must match 3/8.
    const NetworkInstance g = test::single_edge(DyadicProb(3, 3));
    CounterRng r(5);
    CmcSampler s(g);
    int fails = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) fails += s.sample(r);
    const double se = std::sqrt(0.375 * 0.625 / n);
    CHECK(std::abs(fails / double(n) - 0.375) < 4 * se);
    // Closed probabilities are honoured exactly.
    CounterRng r2(6);
    const NetworkInstance never = test::single_edge(DyadicProb(0, 1));
    const NetworkInstance always = test::single_edge(DyadicProb(1, 0));
    for (int i = 0; i < 1000; ++i) {
        CHECK(cmc_sample(never, r2) == 0);
        CHECK(cmc_sample(always, r2) == 1);
    }
}

}
