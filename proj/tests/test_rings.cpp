#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "tvc/ring.hpp"

using namespace tvc;

TEST_CASE("ring construction and validation") {
    CHECK(Ring::integers().name() == "Z");
    CHECK(Ring::integers_mod(6).name() == "Z/6");
    CHECK(Ring::prime_field(5).name() == "GF(5)");
    CHECK(Ring::rationals().name() == "Q");
    CHECK_THROWS_AS(Ring::integers_mod(1), std::invalid_argument);
    CHECK_THROWS_AS(Ring::prime_field(6), std::invalid_argument);
    CHECK(Ring::prime_field(5).is_field());
    CHECK_FALSE(Ring::integers_mod(5) == Ring::prime_field(5));
}

TEST_CASE("basic arithmetic examples") {
    Ring z = Ring::integers(), z6 = Ring::integers_mod(6), q = Ring::rationals();
    CHECK(RingElem(z, 2) + RingElem(z, 3) == RingElem(z, 5));
    CHECK(RingElem(z6, 2) * RingElem(z6, 3) == RingElem::zero(z6));
    CHECK(RingElem(q, Rat(1, 2)) + RingElem(q, Rat(1, 3)) == RingElem(q, Rat(5, 6)));
    CHECK_THROWS_AS(RingElem(z, 1) + RingElem(z6, 1), std::invalid_argument);
}

TEST_CASE("canonical representatives") {
    Ring z6 = Ring::integers_mod(6);
    CHECK(RingElem(z6, -1) == RingElem(z6, 5));
    CHECK(RingElem(z6, 13) == RingElem(z6, 1));
    Ring q = Ring::rationals();
    CHECK(RingElem(q, Rat(2, 4)) == RingElem(q, Rat(1, 2)));
    CHECK(RingElem(q, Rat(-1) / Rat(-2)) == RingElem(q, Rat(1, 2)));
    CHECK(denominator(RingElem(q, Rat(3) / Rat(-6)).value()) > 0);
}

TEST_CASE("unit classification") {
    Ring z = Ring::integers(), z6 = Ring::integers_mod(6);
    CHECK(RingElem(z, -1).is_unit());
    CHECK_FALSE(RingElem(z, 2).is_unit());
    CHECK(RingElem(z6, 5).is_unit());
    CHECK_FALSE(RingElem(z6, 2).is_unit());
    CHECK(RingElem(Ring::rationals(), Rat(2, 3)).is_unit());
    CHECK_FALSE(RingElem::zero(Ring::prime_field(3)).is_unit());
}

TEST_CASE("try_inverse examples") {
    Ring z6 = Ring::integers_mod(6);
    CHECK(*RingElem(z6, 5).try_inverse() == RingElem(z6, 5));
    CHECK(*RingElem(Ring::rationals(), Rat(2, 3)).try_inverse() ==
          RingElem(Ring::rationals(), Rat(3, 2)));
    CHECK_FALSE(RingElem(Ring::integers(), 2).try_inverse().has_value());
}

TEST_CASE("is_unit iff try_inverse, exhaustively over Z/n") {
    for (int n = 2; n <= 30; ++n) {
        Ring ring = Ring::integers_mod(n);
        for (int v = 0; v < n; ++v) {
            RingElem x(ring, v);
            auto inv = x.try_inverse();
            CHECK(x.is_unit() == inv.has_value());
            if (inv) CHECK(x * *inv == RingElem::one(ring));
        }
    }
}

TEST_CASE("ring axioms on random triples") {
    std::vector<Ring> rings{Ring::integers(), Ring::integers_mod(6), Ring::prime_field(7),
                            Ring::rationals()};
    for (const Ring& ring : rings) {
        SplitMix64 rng(42);
        for (int i = 0; i < 1000; ++i) {
            RingElem a = test::random_elem(ring, rng);
            RingElem b = test::random_elem(ring, rng);
            RingElem c = test::random_elem(ring, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == RingElem::zero(ring));
            CHECK(a + RingElem::zero(ring) == a);
            CHECK(a * RingElem::one(ring) == a);
        }
    }
}

TEST_CASE("extended gcd") {
    auto r = extended_gcd(2, 3);
    CHECK(r.g == 1);
    CHECK(r.s == -1);
    CHECK(r.t == 1);
    r = extended_gcd(0, 0);
    CHECK(r.g == 0);
    CHECK(r.s == 0);
    CHECK(r.t == 0);
    r = extended_gcd(6, 4);
    CHECK(r.g == 2);
    CHECK(r.s == 1);
    CHECK(r.t == -1);

    for (int a = -50; a <= 50; ++a)
        for (int b = -50; b <= 50; ++b) {
            auto e = extended_gcd(a, b);
            REQUIRE(e.g == gcd(Int(a), Int(b)));
            REQUIRE(e.g == e.s * a + e.t * b);
            REQUIRE(e.g >= 0);
        }
}

TEST_CASE("random integers and rationals: unit iff inverse") {
    SplitMix64 rng(7);
    for (int i = 0; i < 500; ++i) {
        RingElem a = test::random_elem(Ring::integers(), rng, 10);
        CHECK(a.is_unit() == a.try_inverse().has_value());
        RingElem b = test::random_elem(Ring::rationals(), rng, 10);
        CHECK(b.is_unit() == b.try_inverse().has_value());
    }
}
