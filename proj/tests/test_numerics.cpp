#include <doctest.h>

#include <random>

#include "echcap/errors.hpp"
#include "echcap/rational.hpp"
#include "oracles.hpp"

using namespace echcap;

TEST_CASE("parse_rat accepts fractions, decimals and integers") {
  CHECK(parse_rat("2/3") == Rat(2) / 3);
  CHECK(parse_rat("1.5") == Rat(3) / 2);
  CHECK(parse_rat("0") == 0);
  CHECK(parse_rat("1.618") == Rat(809) / 500);
  CHECK(parse_rat("-0.25") == Rat(-1) / 4);
  CHECK(parse_rat("-4/6") == Rat(-2) / 3);
  CHECK(parse_rat("+7") == 7);
  CHECK(parse_rat("123456789012345678901234567890") ==
        Rat(BigInt("123456789012345678901234567890")));
}

TEST_CASE("parse_rat rejects malformed text") {
  for (const char* bad : {"", "abc", "1/", "/2", "1.2.3", "1/2/3", "1e5", " 1", ".5", "1.", "--1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rat(bad), ParseError);
  }
  CHECK_THROWS_AS(parse_rat("1/0"), DivisionByZero);
}

TEST_CASE("rat_cmp orders exactly") {
  CHECK(rat_cmp(Rat(1) / 3, Rat(2) / 6) == std::strong_ordering::equal);
  CHECK(rat_cmp(Rat(2) / 3, Rat(3) / 4) == std::strong_ordering::less);
  CHECK(rat_cmp(Rat(-1) / 2, 0) == std::strong_ordering::less);
  CHECK(rat_cmp(Rat(5), Rat(9) / 2) == std::strong_ordering::greater);
}

TEST_CASE("to_string and approx") {
  CHECK(to_string(Rat(6) / 4) == "3/2");
  CHECK(to_string(Rat(-6) / 4) == "-3/2");
  CHECK(to_string(Rat(8) / 4) == "2");
  CHECK(approx(Rat(1) / 3) == "0.333333333333");
  CHECK(approx(Rat(89) / 55) == "1.61818181818");
}

TEST_CASE("round trip and reduced arithmetic on random rationals") {
  std::mt19937_64 rng(oracle::test_seed());
  std::uniform_int_distribution<std::int64_t> num(-1000000, 1000000), den(1, 1000000);
  for (int i = 0; i < 500; ++i) {
    Rat x(BigInt(num(rng)), BigInt(den(rng)));
    Rat y(BigInt(num(rng)), BigInt(den(rng)));
    CHECK(parse_rat(to_string(x)) == x);
    for (const Rat& r : {x + y, x - y, x * y}) {
      CHECK(denominator(r) > 0);
      CHECK(gcd(numerator(r), denominator(r)) == 1);
    }
    if (y != 0) {
      Rat q = x / y;
      CHECK(denominator(q) > 0);
      CHECK(gcd(numerator(q), denominator(q)) == 1);
    }
  }
}

TEST_CASE("floor, ceil and integer conversion") {
  CHECK(floor(Rat(7) / 2) == 3);
  CHECK(ceil(Rat(7) / 2) == 4);
  CHECK(floor(Rat(-7) / 2) == -4);
  CHECK(ceil(Rat(-7) / 2) == -3);
  CHECK(floor(Rat(4)) == 4);
  CHECK(is_integer(Rat(10) / 5));
  CHECK_THROWS_AS(to_int64(BigInt("100000000000000000000")), PreconditionError);
  CHECK(gcd(std::int64_t{12}, std::int64_t{18}) == 6);
  CHECK(gcd(std::int64_t{5}, std::int64_t{0}) == 5);
}
