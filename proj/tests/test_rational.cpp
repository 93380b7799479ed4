#include <catch2/catch_amalgamated.hpp>

#include "qchain/rational.hpp"

using namespace qchain;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
    Rational a(2, 6);
    CHECK(a.num() == 1);
    CHECK(a.den() == 3);
    Rational b(3, -6);
    CHECK(b.num() == -1);
    CHECK(b.den() == 2);
    CHECK((a + b).str() == "-1/6");
    CHECK((a * b).str() == "-1/6");
    CHECK((a - a).is_zero());
    CHECK((a / b) == Rational(-2, 3));
}

TEST_CASE("parse and format round the p/q grammar") {
    CHECK(Rational::parse("7").str() == "7");
    CHECK(Rational::parse("-7/21").str() == "-1/3");
    CHECK(Rational::parse("0/5").str() == "0");
    CHECK(Rational::parse("4/2").str() == "2");
    CHECK_THROWS_AS(Rational::parse("1/0"), invalid_input);
    CHECK_THROWS_AS(Rational::parse(""), invalid_input);
    CHECK_THROWS_AS(Rational::parse("1.5"), invalid_input);
    CHECK_THROWS_AS(Rational::parse("a/b"), invalid_input);
    CHECK_THROWS_AS(Rational(1, 0), invalid_input);
}

TEST_CASE("exactness survives repeated arithmetic") {
    // 1/3 summed 3000 times is exactly 1000
    Rational third(1, 3), total(0);
    for (int i = 0; i < 3000; ++i)
        total += third;
    CHECK(total == Rational(1000));
    CHECK_THROWS_AS(third / Rational(0), invalid_input);
}

TEST_CASE("bit_size tracks coefficient growth") {
    Rational small(1, 2);
    Rational big = small;
    for (int i = 0; i < 20; ++i)
        big *= Rational(1000003, 7);
    CHECK(big.bit_size() > small.bit_size());
}
