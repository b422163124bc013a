#include <doctest.h>

#include "esamp/rational.hpp"

using namespace esamp;

TEST_CASE("rational parsing and printing round-trip") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-2/6") == Rational(-1, 3));
  CHECK(parse_rational("0") == Rational(0));
  CHECK(to_string(Rational(1, 3)) == "1/3");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(Rational(-3, 9)) == "-1/3");
  CHECK(parse_rational(to_string(Rational(355, 113))) == Rational(355, 113));
}

TEST_CASE("rational parsing rejects junk") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
}

TEST_CASE("probability predicate and double conversion") {
  CHECK(is_probability(Rational(0)));
  CHECK(is_probability(Rational(1)));
  CHECK(is_probability(Rational(2, 3)));
  CHECK(!is_probability(Rational(-1, 3)));
  CHECK(!is_probability(Rational(4, 3)));
  CHECK(to_double(Rational(1, 4)) == doctest::Approx(0.25));
  CHECK(to_double(Rational(1, 3)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("exact arithmetic stays exact through long chains") {
  Rational s(0);
  for (int i = 1; i <= 200; ++i) s += Rational(1, i) - Rational(1, i);
  CHECK(s == Rational(0));
  Rational p(1);
  for (int i = 2; i <= 30; ++i) p *= Rational(i - 1, i);
  CHECK(p == Rational(1, 30));
}
