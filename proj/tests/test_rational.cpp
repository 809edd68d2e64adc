#include <doctest.h>

#include "kleinian/rational.hpp"

using kleinian::Rational;

TEST_CASE("rational canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(2, -4).den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational arithmetic and ordering") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(b < a);
    CHECK(a.inv() == Rational(3));
    CHECK_THROWS(Rational(0).inv());
}

TEST_CASE("rational string round trip") {
    CHECK(Rational::from_string("22/7").str() == "22/7");
    CHECK(Rational::from_string("-6/4").str() == "-3/2");
    CHECK(Rational::from_string("5").str() == "5");
    CHECK(Rational(7, 1).str() == "7");
    CHECK_THROWS(Rational::from_string("1/0"));
    CHECK_THROWS(Rational::from_string("x"));
}
