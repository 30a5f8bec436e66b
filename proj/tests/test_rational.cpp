#include <catch2/catch_amalgamated.hpp>

#include "pre/rational.hpp"

using namespace pre;

TEST_CASE("rational parsing") {
    CHECK(*parse_rational("1/4") == Rational(1, 4));
    CHECK(*parse_rational("3") == Rational(3));
    CHECK(*parse_rational("0.25") == Rational(1, 4));
    CHECK(*parse_rational("0.125") == Rational(1, 8));
    CHECK(*parse_rational("7/4") == Rational(7, 4));
    CHECK(*parse_rational("2/8") == Rational(1, 4));  // lowest terms
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational("abc"));
    CHECK_FALSE(parse_rational(""));
    CHECK_FALSE(parse_rational("1/4x"));
    CHECK_FALSE(parse_rational("1.2.3"));
}

TEST_CASE("rational formatting") {
    CHECK(to_string(Rational(3, 64)) == "3/64");
    CHECK(to_string(Rational(1)) == "1");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(to_decimal(Rational(3, 64), 6) == "0.046875");
    CHECK(to_decimal(Rational(1, 3), 4) == "0.3333");
    CHECK(to_decimal(Rational(2), 0) == "2");
}

TEST_CASE("probability helpers") {
    CHECK(is_prob(Rational(1)));
    CHECK(is_prob(Rational(0)));
    CHECK_FALSE(is_prob(Rational(7, 4)));
    CHECK_FALSE(is_prob(Rational(-1, 4)));
    CHECK(complement(Rational(1, 4)) == Rational(3, 4));
}
