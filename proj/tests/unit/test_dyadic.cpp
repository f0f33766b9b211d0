#include "netrel/dyadic.hpp"
#include "netrel/errors.hpp"

#include <doctest.h>

using namespace netrel;

TEST_SUITE("dyadic") {

TEST_CASE("probabilities are reduced to canonical form") {
    CHECK(DyadicProb(2, 2) == DyadicProb::half());
    CHECK(DyadicProb(6, 4) == DyadicProb(3, 3));
    CHECK(DyadicProb(0, 5).is_zero());
    CHECK(DyadicProb(0, 5) == DyadicProb(0, 1));
    CHECK(DyadicProb(8, 3).is_one());
    CHECK(DyadicProb(3, 3).to_string() == "3/8");
    CHECK(DyadicProb(3, 3).complement() == DyadicProb(5, 3));
    CHECK(DyadicProb(3, 3).is_open());
    CHECK_FALSE(DyadicProb(1, 0).is_open());
    CHECK_THROWS_AS(DyadicProb(9, 3), InvalidArgument);
    CHECK_THROWS_AS(DyadicProb(1, 63), InvalidArgument);
}

TEST_CASE("exact arithmetic") {
    const Dyadic a(3, 3), b(1, 1);
    CHECK(a + b == Dyadic(7, 3));
    CHECK(b - a == Dyadic(1, 3));
    CHECK(a * b == Dyadic(3, 4));
    CHECK(Dyadic(4, 3) == Dyadic(1, 1));
    CHECK(Dyadic(4, 3).exponent() == 1);
    CHECK(a < b);
    CHECK(Dyadic::one() - Dyadic(33, 6) == Dyadic(31, 6));
    CHECK(Dyadic(33, 6).to_double() == 0.515625);
}

TEST_CASE("text round trip") {
    for (const char* s : {"33/64", "0/1", "1/1", "3121220313/68719476736", "5/1"})
        CHECK(Dyadic::parse(s).to_string() == s);
    CHECK(Dyadic::parse("7") == Dyadic(7, 0));
    CHECK(Dyadic::parse("2/4") == Dyadic(1, 1));
    CHECK_THROWS_AS(Dyadic::parse("1/3"), InvalidArgument);
    CHECK_THROWS_AS(Dyadic::parse("x/2"), InvalidArgument);
}

TEST_CASE("large exponents stay exact") {
    Dyadic acc = Dyadic::zero();
    for (unsigned i = 1; i <= 200; ++i) acc += Dyadic(1, i);
    CHECK(acc + Dyadic(1, 200) == Dyadic::one());
}

}
