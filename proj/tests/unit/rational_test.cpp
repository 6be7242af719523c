#include "normlog/rational.hpp"
#include "normlog/error.hpp"

#include <catch_amalgamated.hpp>

#include <cstdint>
#include <limits>

using normlog::Rational;

TEST_CASE("Rationals are normalized", "[rational]") {
    Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(0, 5).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), normlog::Error);
}

TEST_CASE("Decimal literals parse exactly", "[rational]") {
    Rational r;
    REQUIRE(Rational::parse("0.05", r));
    CHECK(r == Rational(1, 20));
    REQUIRE(Rational::parse("200", r));
    CHECK(r == Rational(200));
    REQUIRE(Rational::parse("12.50", r));
    CHECK(r == Rational(25, 2));
    CHECK_FALSE(Rational::parse("", r));
    CHECK_FALSE(Rational::parse("1.", r));
    CHECK_FALSE(Rational::parse("a1", r));
}

TEST_CASE("Rational arithmetic is exact", "[rational]") {
    Rational twentieth;
    REQUIRE(Rational::parse("0.05", twentieth));
    CHECK(twentieth * Rational(200) == Rational(10));
    CHECK(Rational(200) - Rational(195) == Rational(5));
    CHECK(Rational(5) < twentieth * Rational(200));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(-Rational(1, 3) == Rational(-1, 3));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
}

TEST_CASE("Rational rendering", "[rational]") {
    CHECK(Rational(5).to_string() == "5");
    CHECK(Rational(1, 20).to_string() == "0.05");
    CHECK(Rational(-5, 2).to_string() == "-2.5");
    CHECK(Rational(1, 3).to_string() == "1/3");
}

TEST_CASE("Rational overflow is reported", "[rational]") {
    const auto big = std::numeric_limits<std::int64_t>::max();
    try {
        (void)(Rational(big) + Rational(1));
        FAIL("expected overflow");
    } catch (const normlog::Error& e) {
        CHECK(e.code() == normlog::ErrorCode::ArithmeticOverflow);
    }
    CHECK_THROWS_AS(Rational(big) * Rational(2), normlog::Error);
}
